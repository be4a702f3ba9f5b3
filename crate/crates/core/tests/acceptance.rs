//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! measured runtime and the process exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use arbormz::forests::{coproduct, enumerate_trees, Forest};
use arbormz::hoffman::{exp_lc, exp_map, log_map};
use arbormz::lincomb::{int, rat, LinComb, TensorPair};
use arbormz::verify::{
    bmz_suite, hopf_suite, oracle_suite, relations_suite, rho_degree_property, ReportRow, ORACLE_CUTOFF,
};
use arbormz::words::{words_of_length, y_words_of_weight, XWord, YLetter, YWord};
use arbormz::zeta::{check_bmz_with, hoffman_reg_relation, zeta_lc_x, ZetaCache};

const TOL: f64 = 1e-9;
const RESIDUAL: f64 = 1e-8;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn yw(s: &str) -> YWord {
    s.parse().unwrap()
}

fn xw(s: &str) -> XWord {
    s.parse().unwrap()
}

fn failing(rows: &[ReportRow]) -> Vec<String> {
    rows.iter().filter(|r| !r.pass).map(|r| r.identity.clone()).collect()
}

fn expand(flavor: &str, forest: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_arbormz"))
        .args(["expand", flavor, forest])
        .output()
        .expect("binary runs");
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn criterion_1() -> Outcome {
    let cases = [
        ("--contracting", "y3(y1,y2)", "1*y1.y2.y3 + 1*y2.y1.y3 + 1*y3.y3"),
        ("--simple", "x1(x0,x1(x0))", "2*x0.x0.x1.x1 + 1*x0.x1.x0.x1"),
        ("--simple", "x1(x0,x0(x0))", "3*x0.x0.x0.x1"),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter_map(|(flavor, forest, want)| {
            let got = expand(flavor, forest);
            (got != *want).then(|| format!("{forest}: got `{got}`"))
        })
        .collect();
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "3 expansions exact".into()
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_2() -> Outcome {
    match relations_suite(TOL, 5) {
        Ok(rows) => {
            let printed = &rows[..4];
            let worst = printed.iter().map(|r| r.residual).fold(0.0, f64::max);
            let pass = worst <= RESIDUAL && failing(&rows).is_empty();
            Outcome::new(
                pass,
                format!(
                    "4 printed relations, max residual {worst:.2e}; {} sweep rows",
                    rows.len() - 4
                ),
            )
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_3() -> Outcome {
    let dot: Forest<YLetter> = "y1".parse().unwrap();
    let ladder: Forest<YLetter> = "y1(y1)".parse().unwrap();
    let cherry: Forest<YLetter> = "y1(y1,y1)".parse().unwrap();
    let e = Forest::empty();
    let t = |l: &Forest<YLetter>, r: &Forest<YLetter>| TensorPair::new(l.clone(), r.clone());
    let want_ladder = LinComb::from_terms([
        (t(&ladder, &e), int(1)),
        (t(&e, &ladder), int(1)),
        (t(&dot, &dot), int(1)),
    ]);
    let want_cherry = LinComb::from_terms([
        (t(&cherry, &e), int(1)),
        (t(&e, &cherry), int(1)),
        (t(&dot, &ladder), int(2)),
        (t(&dot.product(&dot), &dot), int(1)),
    ]);
    let pass = coproduct(&ladder) == want_ladder && coproduct(&cherry) == want_cherry;
    Outcome::new(
        pass,
        format!(
            "ladder and cherry; cherry coefficient of dot (x) ladder = {}",
            coproduct(&cherry).coeff(&t(&dot, &ladder))
        ),
    )
}

fn criterion_4() -> Outcome {
    let displays = [
        (exp_map(&yw("y1")), LinComb::basis(yw("y1"))),
        (log_map(&yw("y1")), LinComb::basis(yw("y1"))),
        (
            exp_map(&yw("y1.y2")),
            LinComb::from_terms([(yw("y1.y2"), int(1)), (yw("y3"), rat(1, 2))]),
        ),
        (
            log_map(&yw("y1.y2")),
            LinComb::from_terms([(yw("y1.y2"), int(1)), (yw("y3"), rat(-1, 2))]),
        ),
        (
            exp_map(&yw("y1.y2.y4")),
            LinComb::from_terms([
                (yw("y1.y2.y4"), int(1)),
                (yw("y3.y4"), rat(1, 2)),
                (yw("y1.y6"), rat(1, 2)),
                (yw("y7"), rat(1, 6)),
            ]),
        ),
        (
            log_map(&yw("y1.y2.y4")),
            LinComb::from_terms([
                (yw("y1.y2.y4"), int(1)),
                (yw("y3.y4"), rat(-1, 2)),
                (yw("y1.y6"), rat(-1, 2)),
                (yw("y7"), rat(1, 3)),
            ]),
        ),
    ];
    let displays_ok = displays.iter().filter(|(got, want)| got == want).count();
    let letters: Vec<YLetter> = (1..=3).filter_map(YLetter::new).collect();
    let words: Vec<YWord> = (0..=5).flat_map(|n| words_of_length(&letters, n)).collect();
    let identity_fail = words
        .iter()
        .filter(|w| exp_lc(&log_map(w)) != LinComb::basis((*w).clone()))
        .count();
    Outcome::new(
        displays_ok == 6 && identity_fail == 0,
        format!(
            "{displays_ok}/6 displays; exp(log(w)) = w on {} words, {identity_fail} failures",
            words.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let cache = ZetaCache::new(TOL);
    let mut words = vec![YWord::empty()];
    for weight in 1..=4 {
        words.extend(y_words_of_weight(weight));
    }
    let mut worst = 0.0f64;
    for w in &words {
        match check_bmz_with(w, TOL, &cache) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return Outcome::new(false, format!("{w}: {e}")),
        }
    }
    let (cases, failures) = rho_degree_property(&cache, 8, 200, 7);
    let suite_ok = bmz_suite(TOL, 4).map(|rows| failing(&rows).is_empty()).unwrap_or(false);
    Outcome::new(
        words.len() == 16 && worst <= RESIDUAL && failures == 0 && suite_ok,
        format!(
            "{} words, max residual {worst:.2e}; rho degree drop on {cases} random polynomials, {failures} failures",
            words.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for weight in 2..=5 {
        for w in y_words_of_weight(weight).into_iter().filter(|w| w.is_convergent()) {
            let value = hoffman_reg_relation(&w).and_then(|rel| zeta_lc_x(&rel, TOL));
            match value {
                Ok(v) => worst = worst.max(v.abs()),
                Err(e) => return Outcome::new(false, format!("{w}: {e}")),
            }
            count += 1;
        }
    }
    let want = LinComb::from_terms([(xw("x0.x1.x1"), int(1)), (xw("x0.x0.x1"), int(-1))]);
    let symbolic = hoffman_reg_relation(&yw("y2")).map(|r| r == want).unwrap_or(false);
    Outcome::new(
        worst <= RESIDUAL && symbolic,
        format!("{count} convergent words, max |value| {worst:.2e}; y2 symbolic match {symbolic}"),
    )
}

fn criterion_7() -> Outcome {
    let rows = hopf_suite(4);
    let bad = failing(&rows);
    let cases: f64 = rows
        .iter()
        .map(|r| r.lhs.split(' ').next().unwrap().parse::<f64>().unwrap_or(0.0))
        .sum();
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} identities over {cases} cases", rows.len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_8() -> Outcome {
    match oracle_suite(TOL, 3, &[2, 3], ORACLE_CUTOFF) {
        Ok(rows) => {
            let bad = failing(&rows);
            let pass = bad.is_empty() && !rows.is_empty();
            Outcome::new(
                pass,
                format!(
                    "{} convergent trees, N = {ORACLE_CUTOFF}, {} outside the tail bound",
                    rows.len(),
                    bad.len()
                ),
            )
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_9() -> Outcome {
    let one = [YLetter::new(1).unwrap()];
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_trees(n, &one).len()).collect();
    Outcome::new(counts == [1, 1, 2, 4, 9], format!("counts {counts:?}"))
}

fn main() {
    type Criterion = (usize, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        (1, "exact expansions", Duration::from_secs(1), criterion_1),
        (2, "relation suite", Duration::from_secs(30), criterion_2),
        (3, "coproduct examples", Duration::MAX, criterion_3),
        (4, "Hoffman exp/log", Duration::MAX, criterion_4),
        (
            5,
            "rho relates the two regularizations",
            Duration::from_secs(120),
            criterion_5,
        ),
        (6, "regularization relation", Duration::MAX, criterion_6),
        (7, "Hopf property suite", Duration::from_secs(60), criterion_7),
        (8, "tree-sum oracle", Duration::from_secs(120), criterion_8),
        (9, "tree census", Duration::MAX, criterion_9),
    ];
    let mut all = true;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = outcome.pass && in_time;
        all &= pass;
        let limit = if budget == Duration::MAX {
            String::new()
        } else {
            format!(", limit {budget:?}")
        };
        println!(
            "{} criterion {n} ({name}): {} [{:.3}s{limit}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    if !all {
        eprintln!("at least one acceptance criterion failed");
        std::process::exit(1);
    }
}
