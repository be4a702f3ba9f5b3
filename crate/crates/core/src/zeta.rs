//! Numerical multiple zeta values, θ-regularized characters on both
//! alphabets, the operator ρ, and tree-indexed zeta values.
//!
//! Convergent values are computed by splitting the iterated integral over
//! `1 > t1 > … > tp > 0` at `t = 1/2`. For a convergent X-word `a1⋯ap`,
//!
//! ```text
//! ζ(a1⋯ap) = Σ_j  L(ã_j ⋯ ã_1) · L(a_{j+1} ⋯ a_p)
//! ```
//!
//! where `ã` swaps `x0 ↔ x1` (the substitution `t ↦ 1 − t` on the upper
//! part) and `L(v)` is the iterated integral of `v` from 0 to 1/2, i.e. the
//! multiple polylogarithm `Σ_{k1>…>kr≥1} 2^(−k1) / (k1^n1 ⋯ kr^nr)` of
//! `s⁻¹(v)`. Every series converges like `2^(−k)`, with an explicit tail bound.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arborify::{arborify_x, arborify_y, divergence_x, divergence_y};
use crate::error::{Error, Result};
use crate::forests::{Forest, Tree};
use crate::lincomb::{format_rational, rational_to_f64, LinComb, Rational, ThetaPoly};
use crate::words::{quasi_shuffle, s_inverse, s_map, s_map_lc, shuffle, Word, XLetter, XWord, YLetter, YWord};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const MIN_TOL: f64 = 1e-12;

// Internal evaluations may ask for less than MIN_TOL when splitting a
// tolerance budget across terms; below this the f64 rounding floor dominates.
const INTERNAL_TOL_FLOOR: f64 = 1e-15;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Exponents `(n1, …, nr)` of `ζ(n1, …, nr)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MzvIndex(Vec<u32>);

impl MzvIndex {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::InvalidIndex);
        }
        Ok(MzvIndex(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_convergent(&self) -> bool {
        self.0.first().is_none_or(|&n| n >= 2)
    }

    pub fn to_word(&self) -> YWord {
        Word::from_indices(&self.0).expect("indices are positive")
    }

    pub fn from_word(w: &YWord) -> Self {
        MzvIndex(w.indices())
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "zeta({})", parts.join(","))
    }
}

/// Prints a Y-word combination in `c*zeta(n1,…,nr)` notation, keeping the
/// word order of the combination. The empty word prints as `zeta()`.
pub fn format_zeta_combination(a: &LinComb<YWord>) -> String {
    format_zeta_terms(a.iter().map(|(w, c)| (MzvIndex::from_word(w), c)))
}

/// Same notation for an X-word combination, in X-word order. Every word
/// must end in `x1`.
pub fn format_zeta_combination_x(a: &LinComb<XWord>) -> Result<String> {
    let terms = a
        .iter()
        .map(|(v, c)| Ok((MzvIndex::from_word(&s_inverse(v)?), c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(format_zeta_terms(terms))
}

fn format_zeta_terms<'a, I: IntoIterator<Item = (MzvIndex, &'a Rational)>>(terms: I) -> String {
    let mut out = String::new();
    for (i, (index, c)) in terms.into_iter().enumerate() {
        let magnitude = if i == 0 {
            format_rational(c)
        } else if c.is_negative() {
            out.push_str(" - ");
            format_rational(&-c)
        } else {
            out.push_str(" + ");
            format_rational(c)
        };
        out.push_str(&format!("{magnitude}*{index}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= MIN_TOL {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Running sum with Neumaier compensation.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Upper bound on `Σ_{k>K} 2^(−k) (1 + ln k)^(r−1)`, which dominates the
/// truncation error of the half-polylogarithm of depth `r`.
fn half_polylog_tail(depth: usize, cutoff: usize) -> f64 {
    let k = (cutoff + 1) as f64;
    let power = depth.saturating_sub(1) as i32;
    let first = 0.5f64.powf(k) * (1.0 + k.ln()).powi(power);
    let ratio = 0.5 * (1.0 + 1.0 / k).powi(power);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    first / (1.0 - ratio)
}

/// `Σ_{k1>…>kr≥1} 2^(−k1) Π k_i^(−n_i)` with a certified absolute error bound.
fn half_polylog(exponents: &[u32], eps: f64) -> (f64, f64) {
    let r = exponents.len();
    if r == 0 {
        return (1.0, 0.0);
    }
    let mut cutoff = 8;
    while half_polylog_tail(r, cutoff) > eps / 2.0 {
        cutoff += 1;
    }
    // nested[m] = Σ_{m ≥ k_j > … > k_r ≥ 1} Π k^(−n), built from the innermost index.
    let mut nested: Vec<f64> = vec![1.0; cutoff + 1];
    for &n in exponents[1..].iter().rev() {
        let mut next = vec![0.0; cutoff + 1];
        let mut running = CompensatedSum::default();
        for k in 1..=cutoff {
            running.add((k as f64).powi(-(n as i32)) * nested[k - 1]);
            next[k] = running.value();
        }
        nested = next;
    }
    let n1 = exponents[0] as i32;
    let mut total = CompensatedSum::default();
    let mut half_power = 1.0;
    for k in 1..=cutoff {
        half_power *= 0.5;
        total.add(half_power * (k as f64).powi(-n1) * nested[k - 1]);
    }
    let value = total.value();
    let rounding = (8 * r + 16) as f64 * UNIT_ROUNDOFF * value.max(1.0);
    (value, half_polylog_tail(r, cutoff) + rounding)
}

fn half_polylog_of_x_word(v: &[XLetter], eps: f64) -> (f64, f64) {
    let y = s_inverse(&Word::new(v.to_vec())).expect("convolution pieces end in x1");
    half_polylog(&y.indices(), eps)
}

/// Value and certified error bound of a convergent MZV, with no lower limit
/// on the requested accuracy beyond the f64 floor.
fn mzv_certified(exponents: &[u32], tol: f64) -> (f64, f64) {
    let tol = tol.max(INTERNAL_TOL_FLOOR);
    let word = s_map(&Word::from_indices(exponents).expect("positive exponents"));
    let letters = word.letters();
    let p = letters.len();
    if p == 0 {
        return (1.0, 0.0);
    }
    // Every half-polylog value lies in [0, 1], so each product contributes
    // at most 2e + e² to the error.
    let eps = tol / (3.0 * (p + 1) as f64);
    let mut total = CompensatedSum::default();
    let mut bound = 0.0;
    for j in 0..=p {
        let upper: Vec<XLetter> = letters[..j].iter().rev().map(|a| a.swap()).collect();
        let (a, ea) = half_polylog_of_x_word(&upper, eps);
        let (b, eb) = half_polylog_of_x_word(&letters[j..], eps);
        total.add(a * b);
        bound += a.abs() * eb + b.abs() * ea + ea * eb;
    }
    let value = total.value();
    (value, bound + 4.0 * (p + 1) as f64 * UNIT_ROUNDOFF * value)
}

/// `ζ(n1, …, nr)` to absolute accuracy `tol`, certified by the tail bound.
pub fn eval_mzv(index: &MzvIndex, tol: f64) -> Result<f64> {
    eval_mzv_certified(index, tol).map(|(v, _)| v)
}

/// Like [`eval_mzv`], also returning the certified error bound (≤ `tol`).
pub fn eval_mzv_certified(index: &MzvIndex, tol: f64) -> Result<(f64, f64)> {
    check_tol(tol)?;
    if !index.is_convergent() {
        return Err(Error::Divergent(format!(
            "{index} has leading exponent 1; use the regularized characters instead"
        )));
    }
    Ok(mzv_certified(index.exponents(), tol))
}

/// `ζ(w)` for a convergent Y-word.
pub fn zeta_word_y(w: &YWord, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    zeta_word_y_unchecked(w, tol)
}

fn zeta_word_y_unchecked(w: &YWord, tol: f64) -> Result<f64> {
    if !w.is_convergent() {
        return Err(Error::Divergent(format!("word {w} starts with y1")));
    }
    Ok(mzv_certified(&w.indices(), tol).0)
}

/// `ζ(v)` for a convergent X-word, through `s⁻¹`.
pub fn zeta_word_x(v: &XWord, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    zeta_word_x_unchecked(v, tol)
}

fn zeta_word_x_unchecked(v: &XWord, tol: f64) -> Result<f64> {
    if !v.is_convergent() {
        return Err(Error::Divergent(format!("word {v} must start with x0 and end with x1")));
    }
    zeta_word_y_unchecked(&s_inverse(v)?, tol)
}

fn split_tolerance<B: Ord + Clone>(a: &LinComb<B>, tol: f64) -> f64 {
    let mass = rational_to_f64(&a.abs_mass());
    if mass > 1.0 {
        tol / mass
    } else {
        tol
    }
}

/// Linear extension of [`zeta_word_y`]; total error stays within `tol`.
pub fn zeta_lc_y(a: &LinComb<YWord>, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    zeta_lc_y_unchecked(a, tol)
}

fn zeta_lc_y_unchecked(a: &LinComb<YWord>, tol: f64) -> Result<f64> {
    let per_term = split_tolerance(a, tol);
    let mut total = CompensatedSum::default();
    for (w, c) in a.iter() {
        total.add(rational_to_f64(c) * zeta_word_y_unchecked(w, per_term)?);
    }
    Ok(total.value())
}

/// Linear extension of [`zeta_word_x`].
pub fn zeta_lc_x(a: &LinComb<XWord>, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let per_term = split_tolerance(a, tol);
    let mut total = CompensatedSum::default();
    for (v, c) in a.iter() {
        total.add(rational_to_f64(c) * zeta_word_x_unchecked(v, per_term)?);
    }
    Ok(total.value())
}

/// θ-polynomial whose coefficients are combinations of convergent Y-words.
pub type SymbolicRegValue = ThetaPoly<LinComb<YWord>>;

fn leading_count<T: PartialEq>(letters: &[T], letter: &T) -> usize {
    letters.iter().take_while(|a| *a == letter).count()
}

fn y1() -> YLetter {
    YLetter::new(1).expect("1 is a valid index")
}

/// Quasi-shuffle regularization: the unique extension of `ζ` to all Y-words
/// that is a quasi-shuffle character with `y1 ↦ θ`.
///
/// For `w = y1^a u` with `u` convergent, `y1 ⋆ y1^(a−1)u` contains `w` with
/// coefficient `a`, and every other term has fewer leading `y1`s.
pub fn reg_qsh(w: &YWord) -> SymbolicRegValue {
    reg_qsh_memo(w, &mut HashMap::new())
}

fn reg_qsh_memo(w: &YWord, memo: &mut HashMap<YWord, SymbolicRegValue>) -> SymbolicRegValue {
    if let Some(hit) = memo.get(w) {
        return hit.clone();
    }
    let leading = leading_count(w.letters(), &y1());
    let out = if leading == 0 {
        ThetaPoly::constant(LinComb::basis(w.clone()))
    } else {
        let rest = w.suffix(1);
        let product = quasi_shuffle(&Word::letter(y1()), &rest);
        eliminate(
            w,
            &rest,
            &product,
            memo,
            |u| leading_count(u.letters(), &y1()),
            reg_qsh_memo,
        )
    };
    memo.insert(w.clone(), out.clone());
    out
}

// Solves `reg(first ⋆ rest) = θ · reg(rest)` for the coefficient of `target`.
fn eliminate<W, F, R>(
    target: &W,
    rest: &W,
    product: &LinComb<W>,
    memo: &mut HashMap<W, SymbolicRegValue>,
    leading: F,
    recurse: R,
) -> SymbolicRegValue
where
    W: Ord + Clone + std::hash::Hash,
    F: Fn(&W) -> usize,
    R: Fn(&W, &mut HashMap<W, SymbolicRegValue>) -> SymbolicRegValue,
{
    let pivot = product.coeff(target);
    debug_assert!(!pivot.is_zero());
    let mut acc = recurse(rest, memo).shift(1);
    for (u, c) in product.iter() {
        if u == target {
            continue;
        }
        debug_assert!(leading(u) < leading(target));
        acc = acc.sub(&recurse(u, memo).scale(c));
    }
    acc.scale(&(Rational::one() / pivot))
}

/// Shuffle regularization on `X*x1`, with `x1 ↦ θ`. Coefficients are
/// stored as Y-words through `s⁻¹`.
pub fn reg_sh(v: &XWord) -> Result<SymbolicRegValue> {
    if v.letters().last().is_some_and(|&a| a != XLetter::X1) {
        return Err(Error::NotInImage(v.to_string()));
    }
    Ok(reg_sh_memo(v, &mut HashMap::new()))
}

fn reg_sh_memo(v: &XWord, memo: &mut HashMap<XWord, SymbolicRegValue>) -> SymbolicRegValue {
    if let Some(hit) = memo.get(v) {
        return hit.clone();
    }
    let leading = leading_count(v.letters(), &XLetter::X1);
    let out = if leading == 0 {
        ThetaPoly::constant(LinComb::basis(s_inverse(v).expect("word ends in x1")))
    } else {
        let rest = v.suffix(1);
        let product = shuffle(&Word::letter(XLetter::X1), &rest);
        eliminate(
            v,
            &rest,
            &product,
            memo,
            |u| leading_count(u.letters(), &XLetter::X1),
            reg_sh_memo,
        )
    };
    memo.insert(v.clone(), out.clone());
    out
}

/// Product of symbolic values in the quasi-shuffle picture.
pub fn reg_product_qsh(a: &SymbolicRegValue, b: &SymbolicRegValue) -> SymbolicRegValue {
    a.mul_with(b, |p, q| LinComb::bilinear(p, q, quasi_shuffle))
}

/// Product of symbolic values in the shuffle picture (coefficients are
/// multiplied as the shuffle of their `s`-images).
pub fn reg_product_sh(a: &SymbolicRegValue, b: &SymbolicRegValue) -> SymbolicRegValue {
    a.mul_with(b, |p, q| {
        LinComb::bilinear(p, q, |u, v| {
            shuffle(&s_map(u), &s_map(v)).map_basis(|w| s_inverse(w).expect("ends in x1"))
        })
    })
}

/// A θ-polynomial with real coefficients, each accurate to `tolerance`.
#[derive(Clone, PartialEq, Debug)]
pub struct NumericRegValue {
    pub poly: ThetaPoly<f64>,
    pub tolerance: f64,
}

impl NumericRegValue {
    pub fn exact(poly: ThetaPoly<f64>) -> Self {
        NumericRegValue { poly, tolerance: 0.0 }
    }

    pub fn max_residual(&self, other: &Self) -> f64 {
        self.poly.max_abs_diff(&other.poly)
    }
}

impl fmt::Display for NumericRegValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (tol {:e})", self.poly, self.tolerance)
    }
}

/// Replaces every coefficient by its numerical zeta value.
pub fn eval_reg(s: &SymbolicRegValue, tol: f64) -> Result<NumericRegValue> {
    check_tol(tol)?;
    let mut poly = ThetaPoly::zero();
    for (k, c) in s.iter() {
        poly.add_monomial(k, zeta_lc_y_unchecked(c, tol)?);
    }
    Ok(NumericRegValue { poly, tolerance: tol })
}

/// Source of single zeta values `ζ(n)`, `n ≥ 2`.
pub trait ZetaProvider {
    fn zeta(&self, n: u32) -> f64;
}

/// Computes `ζ(n)` once per `n`, at a tenth of the configured tolerance.
/// Safe to share between threads; inserts are idempotent.
pub struct ZetaCache {
    tol: f64,
    values: RwLock<HashMap<u32, f64>>,
}

impl ZetaCache {
    pub fn new(tol: f64) -> Self {
        ZetaCache {
            tol,
            values: RwLock::new(HashMap::new()),
        }
    }
}

impl ZetaProvider for ZetaCache {
    fn zeta(&self, n: u32) -> f64 {
        assert!(n >= 2, "zeta({n}) diverges");
        if let Some(v) = self.values.read().expect("cache lock").get(&n) {
            return *v;
        }
        let v = mzv_certified(&[n], self.tol / 10.0).0;
        *self.values.write().expect("cache lock").entry(n).or_insert(v)
    }
}

/// `ρ = exp(Σ_{n≥2} (−1)^n ζ(n)/n · (d/dθ)^n)`. The exponent lowers degree
/// by at least two, so the series stops after `deg/2` terms.
pub fn rho(p: &NumericRegValue, zeta: &dyn ZetaProvider) -> NumericRegValue {
    let Some(degree) = p.poly.degree() else {
        return p.clone();
    };
    let weights: Vec<(usize, f64)> = (2..=degree)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (n, sign * zeta.zeta(n as u32) / n as f64)
        })
        .collect();
    let apply_d = |q: &ThetaPoly<f64>| {
        let mut out = ThetaPoly::zero();
        for &(n, w) in &weights {
            for (k, c) in q.derive(n).iter() {
                out.add_monomial(k, c * w);
            }
        }
        out
    };
    let mut total = p.poly.clone();
    let mut term = p.poly.clone();
    let mut m = 1usize;
    loop {
        term = apply_d(&term);
        if term.is_zero() {
            break;
        }
        let factor = Rational::new(BigInt::one(), BigInt::from(m));
        term = term.scale(&factor);
        total = total.add(&term);
        m += 1;
    }
    NumericRegValue {
        poly: total,
        tolerance: p.tolerance,
    }
}

/// Largest coefficient residual between `ζ_sh(s(w))` and `ρ(ζ_qsh(w))`.
pub fn check_bmz(w: &YWord, tol: f64) -> Result<f64> {
    check_bmz_with(w, tol, &ZetaCache::new(tol))
}

pub fn check_bmz_with(w: &YWord, tol: f64, zeta: &dyn ZetaProvider) -> Result<f64> {
    let lhs = eval_reg(&reg_sh(&s_map(w))?, tol)?;
    let rhs = rho(&eval_reg(&reg_qsh(w), tol)?, zeta);
    Ok(lhs.max_residual(&rhs))
}

/// `x1 ⧢ s(w) − s(y1 ⋆ w)`, a combination of convergent X-words.
pub fn hoffman_reg_relation(w: &YWord) -> Result<LinComb<XWord>> {
    if !w.is_convergent() {
        return Err(Error::Divergent(format!("word {w} starts with y1")));
    }
    let left = shuffle(&Word::letter(XLetter::X1), &s_map(w));
    let right = s_map_lc(&quasi_shuffle(&Word::letter(y1()), w));
    Ok(left - right)
}

/// Contracted arborified zeta value of a convergent Y-forest.
pub fn zeta_tree_y(forest: &Forest<YLetter>, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if let Some(reason) = divergence_y(forest) {
        return Err(Error::Divergent(reason));
    }
    zeta_lc_y_unchecked(&arborify_y(forest), tol)
}

/// Arborified zeta value of a convergent two-colour forest, via its word expansion.
pub fn zeta_tree_x(forest: &Forest<XLetter>, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if let Some(reason) = divergence_x(forest) {
        return Err(Error::Divergent(reason));
    }
    zeta_lc_x(&arborify_x(forest), tol)
}

/// Partial sum of `Σ Π_v k_v^(−n_v)` over labelings strictly increasing
/// away from the root, with every label at most `cutoff`.
pub fn brute_tree_sum(t: &Tree<YLetter>, cutoff: usize) -> f64 {
    let table = subtree_table(t, cutoff);
    let mut total = CompensatedSum::default();
    for x in &table[1..] {
        total.add(*x);
    }
    total.value()
}

// table[m] = Σ over labelings of the subtree with root label m.
fn subtree_table(t: &Tree<YLetter>, cutoff: usize) -> Vec<f64> {
    let n = t.decoration().index() as i32;
    let mut table: Vec<f64> = (0..=cutoff)
        .map(|m| if m == 0 { 0.0 } else { (m as f64).powi(-n) })
        .collect();
    for child in t.children() {
        let sub = subtree_table(child, cutoff);
        // strictly-above suffix sums: above[m] = Σ_{m' > m} sub[m']
        let mut above = vec![0.0; cutoff + 2];
        for m in (0..=cutoff).rev() {
            above[m] = above[m + 1] + if m < cutoff { sub[m + 1] } else { 0.0 };
        }
        for m in 1..=cutoff {
            table[m] *= above[m];
        }
    }
    table
}

/// Upper bound on `ζ(t) − brute_tree_sum(t, cutoff)` for a convergent tree.
///
/// A missing labeling has its largest label `K > cutoff` on some leaf `ℓ`,
/// and every other vertex carries a label at most `K`. Summing over `ℓ`:
/// `Σ_ℓ Σ_{K>cutoff} K^(−n_ℓ) Π_{v≠ℓ} h_v(K)` with `h_v = ζ(n_v)` when
/// `n_v ≥ 2` and `h_v(K) = 1 + ln K` when `n_v = 1`; the `K`-sum is bounded
/// by the corresponding integral.
pub fn brute_tree_tail_bound(t: &Tree<YLetter>, cutoff: usize) -> Result<f64> {
    if let Some(reason) = divergence_y(&t.clone().into_forest()) {
        return Err(Error::Divergent(reason));
    }
    let decorations: Vec<u32> = t.decorations().iter().map(|d| d.index()).collect();
    let leaves = leaf_positions(t);
    let cutoff = cutoff.max(1) as f64;
    let mut bound = 0.0;
    for &leaf in &leaves {
        let mut log_factors = 0u32;
        let mut constant = 1.0;
        for (i, &n) in decorations.iter().enumerate() {
            if i == leaf {
                continue;
            }
            if n == 1 {
                log_factors += 1;
            } else {
                constant *= zeta_upper_bound(n);
            }
        }
        bound += constant * log_power_tail(decorations[leaf], log_factors, cutoff);
    }
    Ok(bound)
}

// Preorder positions of leaves, matching `Tree::decorations`.
fn leaf_positions(t: &Tree<YLetter>) -> Vec<usize> {
    fn walk(t: &Tree<YLetter>, next: &mut usize, out: &mut Vec<usize>) {
        let here = *next;
        *next += 1;
        if t.is_leaf() {
            out.push(here);
        }
        for c in t.children() {
            walk(c, next, out);
        }
    }
    let mut out = Vec::new();
    walk(t, &mut 0, &mut out);
    out
}

fn zeta_upper_bound(n: u32) -> f64 {
    let m = 16u32;
    let head: f64 = (1..=m).map(|k| (k as f64).powi(-(n as i32))).sum();
    head + (m as f64).powi(1 - n as i32) / (n as f64 - 1.0)
}

// ∫_N^∞ x^(−n) (1 + ln x)^a dx, which bounds Σ_{K>N} when the integrand
// is decreasing on [N, ∞).
fn log_power_tail(n: u32, a: u32, cutoff: f64) -> f64 {
    let s = n as f64 - 1.0;
    let l = 1.0 + cutoff.ln();
    if l <= a as f64 / n as f64 {
        return f64::INFINITY;
    }
    let mut sum = 0.0;
    let mut falling = 1.0;
    for j in 0..=a {
        if j > 0 {
            falling *= (a - j + 1) as f64;
        }
        sum += falling * l.powi((a - j) as i32) / s.powi(j as i32 + 1);
    }
    cutoff.powf(-s) * sum
}
