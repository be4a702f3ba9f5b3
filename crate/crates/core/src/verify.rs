//! Identity suites and report rows shared by the CLI, the self-test and the
//! acceptance tests.

use std::collections::BTreeSet;
use std::fmt::Display;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arborify::{arborify, arborify_lc, is_convergent_tree_y, ladder_forest, s_tree, Flavor};
use crate::error::Result;
use crate::forests::{b_plus, coproduct, enumerate_forests, enumerate_trees, Forest, Tree};
use crate::hoffman::{exp_lc, exp_map, log_lc, log_map};
use crate::lincomb::{tensor_map, tensor_product, LinComb, TensorPair, ThetaPoly};
use crate::words::{
    deconcat, deconcat_lc, quasi_shuffle, s_map, s_map_lc, shuffle, words_of_length, y_words_of_weight, Letter, Word,
    XLetter, YLetter, YWord,
};
use crate::zeta::{
    brute_tree_sum, brute_tree_tail_bound, check_bmz_with, eval_mzv, eval_reg, hoffman_reg_relation, reg_qsh, rho,
    zeta_lc_x, zeta_lc_y, zeta_tree_y, zeta_word_y, MzvIndex, NumericRegValue, ZetaCache,
};

/// Identity checks pass at this multiple of the evaluation tolerance.
pub const RESIDUAL_FACTOR: f64 = 10.0;

/// Label cutoff for the tree nested-sum oracle.
pub const ORACLE_CUTOFF: usize = 5000;

/// One checked identity.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ReportRow {
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn numeric(identity: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = (lhs - rhs).abs();
        ReportRow {
            identity: identity.into(),
            lhs: format_real(lhs),
            rhs: format_real(rhs),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    pub fn exact<T: Display + PartialEq>(identity: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        let pass = lhs == rhs;
        ReportRow {
            identity: identity.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            residual: if pass { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass,
        }
    }

    /// A property checked over `cases` inputs, `failures` of which broke it.
    pub fn sweep(identity: impl Into<String>, cases: usize, failures: usize) -> Self {
        ReportRow {
            identity: identity.into(),
            lhs: format!("{} cases", cases),
            rhs: format!("{} holding", cases - failures),
            residual: failures as f64,
            tolerance: 0.0,
            pass: failures == 0 && cases > 0,
        }
    }
}

/// Twelve significant digits, fixed notation for moderate magnitudes.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..6).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

pub fn render(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize"),
        Format::Tsv => {
            let mut out = String::from("identity\tlhs\trhs\tresidual\ttolerance\tpass\n");
            for r in rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{:.3e}\t{:.3e}\t{}\n",
                    r.identity, r.lhs, r.rhs, r.residual, r.tolerance, r.pass
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&format!(
                    "[{}] {}\n       lhs = {}\n       rhs = {}\n       residual = {:.3e}  (tolerance {:.3e})\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.identity,
                    r.lhs,
                    r.rhs,
                    r.residual,
                    r.tolerance
                ));
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            out.push_str(&format!("{} rows, {} failed\n", rows.len(), failed));
            out
        }
    }
}

pub fn all_pass(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| r.pass)
}

fn idx(v: &[u32]) -> MzvIndex {
    MzvIndex::new(v.to_vec()).expect("positive exponents")
}

fn convergent_y_words(max_weight: u32) -> Vec<YWord> {
    (1..=max_weight)
        .flat_map(y_words_of_weight)
        .filter(|w| w.is_convergent())
        .collect()
}

/// The four printed relations, then character and regularization sweeps
/// over convergent words up to `max_weight`.
pub fn relations_suite(tol: f64, max_weight: u32) -> Result<Vec<ReportRow>> {
    let bound = RESIDUAL_FACTOR * tol;
    let z = |v: &[u32]| eval_mzv(&idx(v), tol);
    let y = |s: &str| -> YWord { s.parse().expect("literal word") };
    let x = |s: &str| -> crate::words::XWord { s.parse().expect("literal word") };
    let mut rows = vec![
        ReportRow::numeric(
            "quasi-shuffle: zeta(2,3)+zeta(3,2)+zeta(5) = zeta(2)zeta(3)",
            zeta_lc_y(&quasi_shuffle(&y("y2"), &y("y3")), tol)?,
            z(&[2])? * z(&[3])?,
            bound,
        ),
        ReportRow::numeric(
            "shuffle: zeta(2,3)+3zeta(3,2)+6zeta(4,1) = zeta(2)zeta(3)",
            zeta_lc_x(&shuffle(&x("x0.x1"), &x("x0.x0.x1")), tol)?,
            z(&[2])? * z(&[3])?,
            bound,
        ),
        ReportRow::numeric("regularization: zeta(2,1) = zeta(3)", z(&[2, 1])?, z(&[3])?, bound),
        ReportRow::numeric(
            "even values: 2zeta(2)^2 = 5zeta(4)",
            2.0 * z(&[2])?.powi(2),
            5.0 * z(&[4])?,
            bound,
        ),
    ];

    let words = convergent_y_words(max_weight);
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() > max_weight as u64 {
                continue;
            }
            let product = zeta_word_y(u, tol)? * zeta_word_y(v, tol)?;
            rows.push(ReportRow::numeric(
                format!("quasi-shuffle character: {u} * {v}"),
                zeta_lc_y(&quasi_shuffle(u, v), tol)?,
                product,
                bound,
            ));
            rows.push(ReportRow::numeric(
                format!("shuffle character: s({u}) sh s({v})"),
                zeta_lc_x(&shuffle(&s_map(u), &s_map(v)), tol)?,
                product,
                bound,
            ));
        }
    }
    for w in &words {
        let relation = hoffman_reg_relation(w)?;
        rows.push(ReportRow::numeric(
            format!("regularization relation: x1 sh s({w}) - s(y1 * {w})"),
            zeta_lc_x(&relation, tol)?,
            0.0,
            bound,
        ));
    }
    Ok(rows)
}

/// `ζ_sh ∘ s = ρ ∘ ζ_qsh` on every Y-word of weight at most `max_weight`
/// (the empty word included), plus the degree property of ρ.
pub fn bmz_suite(tol: f64, max_weight: u32) -> Result<Vec<ReportRow>> {
    let cache = ZetaCache::new(tol);
    let mut rows = Vec::new();
    let mut words = vec![Word::empty()];
    for weight in 1..=max_weight {
        words.extend(y_words_of_weight(weight));
    }
    for w in &words {
        let residual = check_bmz_with(w, tol, &cache)?;
        rows.push(ReportRow {
            identity: format!("zeta_sh(s({w})) = rho(zeta_qsh({w}))"),
            lhs: format!("{}", eval_reg(&crate::zeta::reg_sh(&s_map(w))?, tol)?.poly),
            rhs: format!("{}", rho(&eval_reg(&reg_qsh(w), tol)?, &cache).poly),
            residual,
            tolerance: RESIDUAL_FACTOR * tol,
            pass: residual <= RESIDUAL_FACTOR * tol,
        });
    }
    let (cases, failures) = rho_degree_property(&cache, 8, 64, 0x5eed);
    rows.push(ReportRow::sweep(
        "deg(rho(P) - P) <= deg(P) - 2 for random P",
        cases,
        failures,
    ));
    Ok(rows)
}

/// Checks the degree drop of `ρ` on `count` random polynomials of degree up
/// to `max_degree`; returns (cases, failures).
pub fn rho_degree_property(cache: &ZetaCache, max_degree: usize, count: usize, seed: u64) -> (usize, usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..count {
        let degree = rng.gen_range(0..=max_degree);
        let mut poly = ThetaPoly::zero();
        for k in 0..=degree {
            poly.add_monomial(k, rng.gen_range(-10.0..10.0));
        }
        if poly.coeff(degree) == 0.0 {
            poly.add_monomial(degree, 1.0);
        }
        let p = NumericRegValue::exact(poly);
        let diff = rho(&p, cache).poly.sub(&p.poly);
        let ok = match (diff.degree(), p.poly.degree()) {
            (None, _) => true,
            (Some(dd), Some(dp)) => dd + 2 <= dp,
            (Some(_), None) => false,
        };
        if !ok {
            failures += 1;
        }
    }
    (count, failures)
}

type Triple<B> = (B, B, B);

fn coassociativity<B, F>(element: &B, delta: F) -> bool
where
    B: Ord + Clone,
    F: Fn(&B) -> LinComb<TensorPair<B>>,
{
    let d = delta(element);
    let left: LinComb<Triple<B>> =
        d.flat_map(|p| delta(&p.left).map_basis(|q| (q.left.clone(), q.right.clone(), p.right.clone())));
    let right: LinComb<Triple<B>> =
        d.flat_map(|p| delta(&p.right).map_basis(|q| (p.left.clone(), q.left.clone(), q.right.clone())));
    left == right
}

fn forests_up_to<D: Letter>(max_vertices: usize, decorations: &[D]) -> Vec<Forest<D>> {
    (0..=max_vertices)
        .flat_map(|n| enumerate_forests(n, decorations))
        .collect()
}

fn cocycle_holds<D: Letter>(d: &D, f: &Forest<D>) -> bool {
    let grafted = b_plus(d.clone(), f).into_forest();
    let lhs = coproduct(&grafted);
    let mut rhs = LinComb::basis(TensorPair::new(grafted.clone(), Forest::empty()));
    for (pair, c) in coproduct(f).iter() {
        rhs.add_term(
            TensorPair::new(pair.left.clone(), b_plus(d.clone(), &pair.right).into_forest()),
            c.clone(),
        );
    }
    lhs == rhs
}

/// `(a ⊗ a) ∘ Δ_BCK = Δ_deconcat ∘ a`.
pub fn arborify_is_coalgebra_morphism<D: Letter>(f: &Forest<D>, flavor: Flavor) -> bool {
    let lhs = tensor_map(&coproduct(f), |g| arborify(g, flavor), |g| arborify(g, flavor));
    let rhs = deconcat_lc(&arborify(f, flavor));
    lhs == rhs
}

/// `a(f·g) = a(f) ⋆ a(g)` with the flavor's product.
pub fn arborify_is_algebra_morphism<D: Letter>(f: &Forest<D>, g: &Forest<D>, flavor: Flavor) -> bool {
    let product = match flavor {
        Flavor::Simple => shuffle::<D>,
        Flavor::Contracting => quasi_shuffle::<D>,
    };
    let lhs = arborify(&f.product(g), flavor);
    let rhs = LinComb::bilinear(&arborify(f, flavor), &arborify(g, flavor), product);
    lhs == rhs
}

fn count<I: IntoIterator<Item = bool>>(checks: I) -> (usize, usize) {
    checks
        .into_iter()
        .fold((0, 0), |(n, bad), ok| (n + 1, bad + usize::from(!ok)))
}

fn unordered_pairs<T>(items: &[T]) -> impl Iterator<Item = (&T, &T)> {
    items
        .iter()
        .enumerate()
        .flat_map(move |(i, a)| items[i..].iter().map(move |b| (a, b)))
}

fn y_letters(max: u32) -> Vec<YLetter> {
    (1..=max).filter_map(YLetter::new).collect()
}

/// Exact Hopf-algebraic identities at desk scale: forests with at most
/// `max_vertices` vertices and words of length at most 5.
pub fn hopf_suite(max_vertices: usize) -> Vec<ReportRow> {
    let xs = [XLetter::X0, XLetter::X1];
    let two = y_letters(2);
    let three = y_letters(3);
    let x_forests = forests_up_to(max_vertices, &xs);
    let y_forests = forests_up_to(max_vertices, &three);
    let mut rows = Vec::new();

    let (n, bad) = count(x_forests.iter().map(|f| coassociativity(f, coproduct)));
    rows.push(ReportRow::sweep(
        format!("BCK coassociativity, 2-decorated forests <= {max_vertices} vertices"),
        n,
        bad,
    ));

    let below: Vec<&Forest<XLetter>> = x_forests.iter().filter(|f| f.grade() < max_vertices).collect();
    let (n, bad) = count(below.iter().flat_map(|f| xs.iter().map(move |d| cocycle_holds(d, f))));
    rows.push(ReportRow::sweep(
        format!("cocycle: D(B+(f)) = B+(f) (x) 1 + (id (x) B+)D(f), trees <= {max_vertices} vertices"),
        n,
        bad,
    ));

    let mut pairs = Vec::new();
    for f in &x_forests {
        for g in &x_forests {
            if f.grade() + g.grade() <= max_vertices && f <= g {
                pairs.push((f, g));
            }
        }
    }
    let (n, bad) = count(pairs.iter().map(|(f, g)| {
        let lhs = coproduct(&f.product(g));
        let rhs = tensor_product(&coproduct(f), &coproduct(g), |a, b| LinComb::basis(a.product(b)));
        lhs == rhs
    }));
    rows.push(ReportRow::sweep("BCK multiplicativity: D(fg) = D(f)D(g)", n, bad));

    let (n, bad) = count(x_forests.iter().map(|f| {
        let d = coproduct(f);
        let left = d.flat_map(|p| LinComb::term(p.right.clone(), p.left.counit()));
        let right = d.flat_map(|p| LinComb::term(p.left.clone(), p.right.counit()));
        left == LinComb::basis(f.clone()) && right == LinComb::basis(f.clone())
    }));
    rows.push(ReportRow::sweep("BCK counit axioms", n, bad));

    let (n, bad) = count(
        x_forests
            .iter()
            .map(|f| arborify_is_coalgebra_morphism(f, Flavor::Simple)),
    );
    rows.push(ReportRow::sweep(
        "simple arborification is a coalgebra morphism",
        n,
        bad,
    ));
    let (n, bad) = count(
        y_forests
            .iter()
            .map(|f| arborify_is_coalgebra_morphism(f, Flavor::Contracting)),
    );
    rows.push(ReportRow::sweep(
        "contracting arborification is a coalgebra morphism",
        n,
        bad,
    ));

    let small_y: Vec<Forest<YLetter>> = forests_up_to(3, &two).into_iter().filter(|f| !f.is_empty()).collect();
    let (n, bad) =
        count(unordered_pairs(&small_y).map(|(f, g)| arborify_is_algebra_morphism(f, g, Flavor::Contracting)));
    rows.push(ReportRow::sweep(
        "contracting arborification is an algebra morphism (3+3 vertices)",
        n,
        bad,
    ));
    let small_x: Vec<Forest<XLetter>> = forests_up_to(3, &xs).into_iter().filter(|f| !f.is_empty()).collect();
    let (n, bad) = count(unordered_pairs(&small_x).map(|(f, g)| arborify_is_algebra_morphism(f, g, Flavor::Simple)));
    rows.push(ReportRow::sweep(
        "simple arborification is an algebra morphism (3+3 vertices)",
        n,
        bad,
    ));

    let x_words: Vec<_> = (1..=5).flat_map(|len| words_of_length(&xs, len)).collect();
    let y_words: Vec<_> = (1..=5).flat_map(|len| words_of_length(&three, len)).collect();
    let (n1, bad1) = count(
        x_words
            .iter()
            .map(|w| arborify(&ladder_forest(w), Flavor::Simple) == LinComb::basis(w.clone())),
    );
    let (n2, bad2) = count(
        y_words
            .iter()
            .map(|w| arborify(&ladder_forest(w), Flavor::Contracting) == LinComb::basis(w.clone())),
    );
    rows.push(ReportRow::sweep(
        "ladder section: a(ladder(w)) = w, length <= 5",
        n1 + n2,
        bad1 + bad2,
    ));

    let (n, bad) = count(y_forests.iter().map(|f| {
        let lhs = arborify_lc(&s_tree(f), Flavor::Simple);
        let rhs = s_map_lc(&arborify(f, Flavor::Contracting));
        lhs == rhs
    }));
    rows.push(ReportRow::sweep(
        "arborified substitution: a_X(sT(f)) = s(a_Y(f))",
        n,
        bad,
    ));

    let (n, bad) = count(
        (0..=6)
            .flat_map(|len| words_of_length(&xs, len))
            .map(|w| coassociativity(&w, deconcat)),
    );
    rows.push(ReportRow::sweep("deconcatenation coassociativity, length <= 6", n, bad));

    let mut compat = Vec::new();
    for total in 0..=5 {
        for p in 0..=total {
            for u in words_of_length(&xs, p) {
                for v in words_of_length(&xs, total - p) {
                    let lhs = deconcat_lc(&shuffle(&u, &v));
                    let rhs = tensor_product(&deconcat(&u), &deconcat(&v), shuffle);
                    compat.push(lhs == rhs);
                }
            }
            for u in words_of_length(&two, p) {
                for v in words_of_length(&two, total - p) {
                    let lhs = deconcat_lc(&quasi_shuffle(&u, &v));
                    let rhs = tensor_product(&deconcat(&u), &deconcat(&v), quasi_shuffle);
                    compat.push(lhs == rhs);
                }
            }
        }
    }
    let (n, bad) = count(compat);
    rows.push(ReportRow::sweep(
        "bialgebra compatibility of (quasi-)shuffle and deconcatenation",
        n,
        bad,
    ));

    let hoffman_words: Vec<YWord> = (0..=5).flat_map(|len| words_of_length(&three, len)).collect();
    let (n, bad) = count(hoffman_words.iter().map(|w| {
        let id = LinComb::basis(w.clone());
        exp_lc(&log_map(w)) == id && log_lc(&exp_map(w)) == id
    }));
    rows.push(ReportRow::sweep(
        "Hoffman: exp(log(w)) = log(exp(w)) = w, length <= 5",
        n,
        bad,
    ));

    let mut morphism = Vec::new();
    let mut comorphism = Vec::new();
    for total in 0..=5 {
        for p in 0..=total {
            for u in words_of_length(&two, p) {
                for v in words_of_length(&two, total - p) {
                    if p <= 2 && total - p <= 3 {
                        let lhs = exp_lc(&shuffle(&u, &v));
                        let rhs = LinComb::bilinear(&exp_map(&u), &exp_map(&v), quasi_shuffle);
                        morphism.push(lhs == rhs);
                    }
                }
            }
        }
        for w in words_of_length(&three, total) {
            let lhs = deconcat_lc(&exp_map(&w));
            let rhs = tensor_map(&deconcat(&w), exp_map, exp_map);
            comorphism.push(lhs == rhs);
        }
    }
    let (n, bad) = count(morphism);
    rows.push(ReportRow::sweep("Hoffman: exp(u sh v) = exp(u) * exp(v)", n, bad));
    let (n, bad) = count(comorphism);
    rows.push(ReportRow::sweep("Hoffman: exp is a coalgebra morphism", n, bad));
    rows
}

/// All convergent Y-trees with at most `max_vertices` vertices decorated
/// from `decorations`.
pub fn convergent_y_trees(max_vertices: usize, decorations: &[u32]) -> Vec<Tree<YLetter>> {
    let letters: Vec<YLetter> = decorations.iter().filter_map(|&n| YLetter::new(n)).collect();
    (1..=max_vertices)
        .flat_map(|n| enumerate_trees(n, &letters))
        .filter(|t| is_convergent_tree_y(&t.clone().into_forest()))
        .collect()
}

/// Nested-sum oracle against the word expansion, one row per tree.
/// The residual must lie in `[−tol, tail bound + tol]`.
pub fn oracle_suite(tol: f64, max_vertices: usize, decorations: &[u32], cutoff: usize) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for t in convergent_y_trees(max_vertices, decorations) {
        let brute = brute_tree_sum(&t, cutoff);
        let expanded = zeta_tree_y(&t.clone().into_forest(), tol)?;
        let bound = brute_tree_tail_bound(&t, cutoff)?;
        let gap = expanded - brute;
        rows.push(ReportRow {
            identity: format!("bruteTreeSum({t}, {cutoff}) vs zetaTreeY({t})"),
            lhs: format_real(brute),
            rhs: format_real(expanded),
            residual: gap.abs(),
            tolerance: bound + tol,
            pass: gap >= -tol && gap <= bound + tol,
        });
    }
    Ok(rows)
}

/// Distinct canonical trees found by canonicalizing every labeled
/// shape (parent arrays with `parent[i] < i`) under every decoration.
pub fn brute_force_tree_count(n: usize, decorations: usize) -> usize {
    fn build(v: usize, parents: &[usize], decos: &[u32]) -> Tree<YLetter> {
        let children: Vec<Tree<YLetter>> = (v + 1..parents.len() + 1)
            .filter(|&c| parents[c - 1] == v)
            .map(|c| build(c, parents, decos))
            .collect();
        b_plus(YLetter::new(decos[v]).expect("positive"), &Forest::new(children))
    }
    if n == 0 || decorations == 0 {
        return 0;
    }
    let mut seen = BTreeSet::new();
    // parents[i-1] is the parent of vertex i, always an earlier vertex.
    let mut parents = vec![0usize; n - 1];
    loop {
        let mut decos = vec![1u32; n];
        loop {
            seen.insert(build(0, &parents, &decos));
            let mut i = 0;
            while i < n && decos[i] == decorations as u32 {
                decos[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            decos[i] += 1;
        }
        let mut i = 0;
        while i < n - 1 && parents[i] == i {
            parents[i] = 0;
            i += 1;
        }
        if i == n - 1 {
            break;
        }
        parents[i] += 1;
    }
    seen.len()
}
