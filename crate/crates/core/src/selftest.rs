//! Worked examples with their known values, checked exactly or to a fixed
//! numerical tolerance.

use crate::arborify::{arborify_x, arborify_y, is_convergent_tree_x};
use crate::cli::{enumerate_output, expand_output, zeta_output};
use crate::error::Result;
use crate::forests::{b_plus, coproduct, enumerate_trees, Forest, Tree};
use crate::hoffman::{exp_map, log_map};
use crate::lincomb::{int, rat, LinComb, TensorPair, ThetaPoly};
use crate::verify::ReportRow;
use crate::words::{quasi_shuffle, s_map, shuffle, XLetter, XWord, YLetter, YWord};
use crate::zeta::{
    eval_mzv, hoffman_reg_relation, reg_qsh, rho, zeta_lc_x, zeta_lc_y, zeta_tree_x, MzvIndex, NumericRegValue,
    ZetaCache,
};

const TOL: f64 = 1e-9;
const PI: f64 = std::f64::consts::PI;

fn yw(s: &str) -> YWord {
    s.parse().expect("example word")
}

fn xw(s: &str) -> XWord {
    s.parse().expect("example word")
}

fn yf(s: &str) -> Forest<YLetter> {
    s.parse().expect("example forest")
}

fn xf(s: &str) -> Forest<XLetter> {
    s.parse().expect("example forest")
}

fn z(v: &[u32]) -> Result<f64> {
    eval_mzv(&MzvIndex::new(v.to_vec())?, TOL)
}

fn exact_text(identity: &str, got: std::result::Result<String, crate::cli::Failure>, want: &str) -> ReportRow {
    let got = got.unwrap_or_else(|f| format!("error: {}", f.message));
    ReportRow::exact(identity, &got, &want.to_string())
}

fn failed(identity: &str, e: crate::error::Error) -> ReportRow {
    ReportRow {
        identity: identity.into(),
        lhs: format!("error: {e}"),
        rhs: "a value".into(),
        residual: f64::INFINITY,
        tolerance: 0.0,
        pass: false,
    }
}

fn numeric(identity: &str, lhs: Result<f64>, rhs: Result<f64>, tol: f64) -> ReportRow {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => ReportRow::numeric(identity, a, b, tol),
        (Err(e), _) | (_, Err(e)) => failed(identity, e),
    }
}

/// Runs every worked example; one row each.
pub fn selftest() -> Vec<ReportRow> {
    let mut rows = Vec::new();
    words_examples(&mut rows);
    forest_examples(&mut rows);
    arborify_examples(&mut rows);
    hoffman_examples(&mut rows);
    zeta_examples(&mut rows);
    cli_examples(&mut rows);
    rows
}

fn words_examples(rows: &mut Vec<ReportRow>) {
    rows.push(ReportRow::exact(
        "quasiShuffle(y2, y3)",
        &quasi_shuffle(&yw("y2"), &yw("y3")),
        &LinComb::from_terms([(yw("y2.y3"), int(1)), (yw("y3.y2"), int(1)), (yw("y5"), int(1))]),
    ));
    rows.push(ReportRow::exact("sMap(y2)", &s_map(&yw("y2")), &xw("x0.x1")));
}

fn forest_examples(rows: &mut Vec<ReportRow>) {
    let y2 = YLetter::new(2).expect("positive");
    rows.push(ReportRow::exact(
        "bPlus(y2, e) is a single vertex",
        &b_plus(y2, &Forest::empty()),
        &Tree::leaf(y2),
    ));

    let y1 = || YLetter::new(1).expect("positive");
    let dot = Tree::leaf(y1()).into_forest();
    let ladder2 = yf("y1(y1)");
    let cherry = yf("y1(y1,y1)");
    let pair = |l: &Forest<YLetter>, r: &Forest<YLetter>| TensorPair::new(l.clone(), r.clone());
    let e = Forest::empty();
    rows.push(ReportRow::exact(
        "coproduct of the two-vertex ladder",
        &coproduct(&ladder2),
        &LinComb::from_terms([
            (pair(&ladder2, &e), int(1)),
            (pair(&e, &ladder2), int(1)),
            (pair(&dot, &dot), int(1)),
        ]),
    ));
    rows.push(ReportRow::exact(
        "coproduct of the cherry",
        &coproduct(&cherry),
        &LinComb::from_terms([
            (pair(&cherry, &e), int(1)),
            (pair(&e, &cherry), int(1)),
            (pair(&dot, &ladder2), int(2)),
            (pair(&dot.product(&dot), &dot), int(1)),
        ]),
    ));
    rows.push(ReportRow::exact("counit(e)", &e.counit(), &int(1)));
    rows.push(ReportRow::exact("counit(single vertex)", &dot.counit(), &int(0)));
    let undecorated = [y1()];
    rows.push(ReportRow::exact(
        "five-vertex trees",
        &enumerate_trees(5, &undecorated).len(),
        &9,
    ));
    rows.push(ReportRow::exact(
        "three-vertex trees",
        &enumerate_trees(3, &undecorated).len(),
        &2,
    ));
    let census: Vec<usize> = (1..=5).map(|n| enumerate_trees(n, &undecorated).len()).collect();
    rows.push(ReportRow::exact(
        "tree census n = 1..5",
        &format!("{census:?}"),
        &"[1, 1, 2, 4, 9]".to_string(),
    ));
}

fn arborify_examples(rows: &mut Vec<ReportRow>) {
    rows.push(ReportRow::exact(
        "arborifyX(x1(x0,x1(x0)))",
        &arborify_x(&xf("x1(x0,x1(x0))")),
        &LinComb::from_terms([(xw("x0.x0.x1.x1"), int(2)), (xw("x0.x1.x0.x1"), int(1))]),
    ));
    rows.push(ReportRow::exact(
        "arborifyX(x1(x0,x0(x0)))",
        &arborify_x(&xf("x1(x0,x0(x0))")),
        &LinComb::term(xw("x0.x0.x0.x1"), int(3)),
    ));
    rows.push(ReportRow::exact(
        "arborifyY(y3(y1,y2))",
        &arborify_y(&yf("y3(y1,y2)")),
        &LinComb::from_terms([
            (yw("y1.y2.y3"), int(1)),
            (yw("y2.y1.y3"), int(1)),
            (yw("y3.y3"), int(1)),
        ]),
    ));
    rows.push(ReportRow::exact(
        "isConvergentTreeX(x1(x0,x1(x0)))",
        &is_convergent_tree_x(&xf("x1(x0,x1(x0))")),
        &true,
    ));
}

// v1, v2, v3 stand for y1, y2, y4, so every bracket [..] is a distinct letter.
fn hoffman_examples(rows: &mut Vec<ReportRow>) {
    let cases = [
        ("exp(v1)", exp_map(&yw("y1")), LinComb::basis(yw("y1"))),
        ("log(v1)", log_map(&yw("y1")), LinComb::basis(yw("y1"))),
        (
            "exp(v1 v2)",
            exp_map(&yw("y1.y2")),
            LinComb::from_terms([(yw("y1.y2"), int(1)), (yw("y3"), rat(1, 2))]),
        ),
        (
            "log(v1 v2)",
            log_map(&yw("y1.y2")),
            LinComb::from_terms([(yw("y1.y2"), int(1)), (yw("y3"), rat(-1, 2))]),
        ),
        (
            "exp(v1 v2 v3)",
            exp_map(&yw("y1.y2.y4")),
            LinComb::from_terms([
                (yw("y1.y2.y4"), int(1)),
                (yw("y3.y4"), rat(1, 2)),
                (yw("y1.y6"), rat(1, 2)),
                (yw("y7"), rat(1, 6)),
            ]),
        ),
        (
            "log(v1 v2 v3)",
            log_map(&yw("y1.y2.y4")),
            LinComb::from_terms([
                (yw("y1.y2.y4"), int(1)),
                (yw("y3.y4"), rat(-1, 2)),
                (yw("y1.y6"), rat(-1, 2)),
                (yw("y7"), rat(1, 3)),
            ]),
        ),
    ];
    for (name, got, want) in cases {
        rows.push(ReportRow::exact(format!("Hoffman {name}"), &got, &want));
    }
}

fn zeta_examples(rows: &mut Vec<ReportRow>) {
    let bound = 2.0 * TOL;
    rows.push(numeric("zeta(2) = pi^2/6", z(&[2]), Ok(PI * PI / 6.0), bound));
    rows.push(numeric("zeta(4) = pi^4/90", z(&[4]), Ok(PI.powi(4) / 90.0), bound));
    rows.push(numeric("zeta(2,1) = zeta(3)", z(&[2, 1]), z(&[3]), bound));
    rows.push(numeric(
        "2 zeta(2)^2 = 5 zeta(4)",
        z(&[2]).map(|v| 2.0 * v * v),
        z(&[4]).map(|v| 5.0 * v),
        10.0 * TOL,
    ));
    rows.push(numeric(
        "zeta of quasiShuffle(y2, y3) = zeta(2) zeta(3)",
        zeta_lc_y(&quasi_shuffle(&yw("y2"), &yw("y3")), TOL),
        z(&[2]).and_then(|a| z(&[3]).map(|b| a * b)),
        10.0 * TOL,
    ));
    rows.push(numeric(
        "zeta of shuffle(x0.x1, x0.x0.x1) = zeta(2) zeta(3)",
        zeta_lc_x(&shuffle(&xw("x0.x1"), &xw("x0.x0.x1")), TOL),
        z(&[2]).and_then(|a| z(&[3]).map(|b| a * b)),
        10.0 * TOL,
    ));

    let theta = ThetaPoly::monomial(1, LinComb::basis(YWord::empty()));
    rows.push(ReportRow::exact("regQsh(y1) = theta", &reg_qsh(&yw("y1")), &theta));

    let cache = ZetaCache::new(TOL);
    let one = NumericRegValue::exact(ThetaPoly::constant(1.0));
    let th = NumericRegValue::exact(ThetaPoly::monomial(1, 1.0));
    rows.push(ReportRow::exact("rho(1) = 1", &rho(&one, &cache).poly, &one.poly));
    rows.push(ReportRow::exact("rho(theta) = theta", &rho(&th, &cache).poly, &th.poly));

    let relation = LinComb::from_terms([(xw("x0.x1.x1"), int(1)), (xw("x0.x0.x1"), int(-1))]);
    match hoffman_reg_relation(&yw("y2")) {
        Ok(got) => rows.push(ReportRow::exact("hoffmanRegRelation(y2)", &got, &relation)),
        Err(e) => rows.push(failed("hoffmanRegRelation(y2)", e)),
    }

    rows.push(numeric(
        "zetaTreeX(x1(x0,x1(x0))) = 2 zeta(3,1) + zeta(2,2)",
        zeta_tree_x(&xf("x1(x0,x1(x0))"), TOL),
        z(&[3, 1]).and_then(|a| z(&[2, 2]).map(|b| 2.0 * a + b)),
        10.0 * TOL,
    ));
    rows.push(numeric(
        "zetaTreeX(x1(x0,x0(x0))) = 3 zeta(4)",
        zeta_tree_x(&xf("x1(x0,x0(x0))"), TOL),
        z(&[4]).map(|v| 3.0 * v),
        10.0 * TOL,
    ));
}

fn first_line(r: std::result::Result<String, crate::cli::Failure>) -> std::result::Result<String, crate::cli::Failure> {
    r.map(|s| s.lines().next().unwrap_or_default().to_string())
}

fn cli_examples(rows: &mut Vec<ReportRow>) {
    rows.push(exact_text(
        "expand --contracting y3(y1,y2)",
        expand_output("y3(y1,y2)", true),
        "1*y1.y2.y3 + 1*y2.y1.y3 + 1*y3.y3",
    ));
    rows.push(exact_text(
        "expand --simple x1(x0,x1(x0))",
        expand_output("x1(x0,x1(x0))", false),
        "2*x0.x0.x1.x1 + 1*x0.x1.x0.x1",
    ));
    rows.push(exact_text(
        "expand --simple x1(x0,x0(x0))",
        expand_output("x1(x0,x0(x0))", false),
        "3*x0.x0.x0.x1",
    ));
    rows.push(exact_text(
        "zeta x1(x0,x1(x0))",
        first_line(zeta_output("x1(x0,x1(x0))", false, TOL)),
        "2*zeta(3,1) + 1*zeta(2,2)",
    ));
    rows.push(exact_text(
        "enumerate 5",
        first_line(enumerate_output(5, 1, 8)),
        "9 trees with 5 vertices, decorations y1..y1",
    ));
}
