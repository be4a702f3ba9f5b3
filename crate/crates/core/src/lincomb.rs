//! Exact rational scalars, formal linear combinations over an ordered basis,
//! and univariate polynomials in the regularization variable θ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64()
        .unwrap_or_else(|| c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN))
}

/// A finite formal linear combination `Σ c_b · b` with nonzero rational
/// coefficients. The basis order fixes iteration and printing order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    /// The zero combination (distinct from the unit basis element).
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 · b`.
    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }

    /// Adds `c · b` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    /// Adds `scale · other` in place.
    pub fn add_scaled(&mut self, other: &Self, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `b` (zero when absent).
    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    /// Linear extension of a basis-level map `f: B → LinComb⟨C⟩`.
    pub fn flat_map<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> LinComb<C>,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Linear extension of a basis-to-basis map.
    pub fn map_basis<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> C,
    {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    /// `Σ_{u,v} a(u)·b(v)·f(u,v)`.
    pub fn bilinear<C, D, F>(a: &Self, b: &LinComb<C>, mut f: F) -> LinComb<D>
    where
        C: Ord + Clone,
        D: Ord + Clone,
        F: FnMut(&B, &C) -> LinComb<D>,
    {
        let mut out = LinComb::zero();
        for (u, cu) in &a.terms {
            for (v, cv) in &b.terms {
                out.add_scaled(&f(u, v), &(cu * cv));
            }
        }
        out
    }
}

impl<B: Ord + Clone> IntoIterator for LinComb<B> {
    type Item = (B, Rational);
    type IntoIter = std::collections::btree_map::IntoIter<B, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        &self + &rhs
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        &self - &rhs
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;

    fn neg(self) -> LinComb<B> {
        self.scale(&-Rational::one())
    }
}

impl<B: Ord + Clone> Mul<&LinComb<B>> for &Rational {
    type Output = LinComb<B>;

    fn mul(self, rhs: &LinComb<B>) -> LinComb<B> {
        rhs.scale(self)
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(b, c)| (b, format_rational(c))))
            .finish()
    }
}

/// Prints `c1*b1 + c2*b2 - c3*b3`; the zero combination prints as `0`.
impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let shown = if i == 0 {
                format_rational(c)
            } else if c.is_negative() {
                write!(f, " - ")?;
                format_rational(&-c)
            } else {
                write!(f, " + ")?;
                format_rational(c)
            };
            write!(f, "{shown}*{b}")?;
        }
        Ok(())
    }
}

/// An ordered pair `left ⊗ right` of basis elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorPair<B> {
    pub left: B,
    pub right: B,
}

impl<B> TensorPair<B> {
    pub fn new(left: B, right: B) -> Self {
        TensorPair { left, right }
    }
}

impl<B: fmt::Display> fmt::Display for TensorPair<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.left, self.right)
    }
}

/// Componentwise product of two tensor combinations, given the product on `B`.
pub fn tensor_product<B, F>(
    a: &LinComb<TensorPair<B>>,
    b: &LinComb<TensorPair<B>>,
    mut product: F,
) -> LinComb<TensorPair<B>>
where
    B: Ord + Clone,
    F: FnMut(&B, &B) -> LinComb<B>,
{
    LinComb::bilinear(a, b, |s, t| {
        let left = product(&s.left, &t.left);
        let right = product(&s.right, &t.right);
        LinComb::bilinear(&left, &right, |l, r| {
            LinComb::basis(TensorPair::new(l.clone(), r.clone()))
        })
    })
}

/// `Σ c · f(left) ⊗ g(right)` for linear maps given on basis elements.
pub fn tensor_map<B, C, F, G>(a: &LinComb<TensorPair<B>>, mut f: F, mut g: G) -> LinComb<TensorPair<C>>
where
    B: Ord + Clone,
    C: Ord + Clone,
    F: FnMut(&B) -> LinComb<C>,
    G: FnMut(&B) -> LinComb<C>,
{
    a.flat_map(|pair| {
        let left = f(&pair.left);
        let right = g(&pair.right);
        LinComb::bilinear(&left, &right, |l, r| {
            LinComb::basis(TensorPair::new(l.clone(), r.clone()))
        })
    })
}

/// Coefficient rings and modules usable inside a [`ThetaPoly`].
pub trait Coefficient: Clone + PartialEq {
    fn null() -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn null() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coefficient for f64 {
    fn null() -> Self {
        0.0
    }
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * rational_to_f64(c)
    }
}

impl<B: Ord + Clone> Coefficient for LinComb<B> {
    fn null() -> Self {
        LinComb::zero()
    }
    fn vanishes(&self) -> bool {
        LinComb::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Rational) -> Self {
        LinComb::scale(self, c)
    }
}

/// Polynomial `Σ_k c_k θ^k` with coefficients in `C`; zero coefficients are
/// never stored, so the zero polynomial has no degree.
#[derive(Clone, PartialEq, Debug)]
pub struct ThetaPoly<C> {
    coeffs: BTreeMap<usize, C>,
}

impl<C: Coefficient> Default for ThetaPoly<C> {
    fn default() -> Self {
        ThetaPoly {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> ThetaPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// `c · θ^degree`.
    pub fn monomial(degree: usize, c: C) -> Self {
        let mut p = Self::zero();
        p.add_monomial(degree, c);
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.add_monomial(k, c);
        }
        p
    }

    pub fn add_monomial(&mut self, degree: usize, c: C) {
        let sum = match self.coeffs.get(&degree) {
            Some(existing) => existing.plus(&c),
            None => c,
        };
        if sum.vanishes() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: usize) -> C {
        self.coeffs.get(&degree).cloned().unwrap_or_else(C::null)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_monomial(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, x)| (*k, x.scaled(c))))
    }

    /// Multiplication by `θ^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        ThetaPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + shift, c.clone())).collect(),
        }
    }

    /// The `n`-th formal derivative in θ.
    pub fn derive(&self, n: usize) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.coeffs {
            if k < n {
                continue;
            }
            // k!/(k−n)!
            let falling: BigInt = ((k - n + 1)..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j));
            out.add_monomial(k - n, c.scaled(&Rational::from_integer(falling)));
        }
        out
    }

    /// Polynomial product, given the bilinear product of coefficients.
    pub fn mul_with<F>(&self, other: &Self, mut product: F) -> Self
    where
        F: FnMut(&C, &C) -> C,
    {
        let mut out = Self::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_monomial(i + j, product(a, b));
            }
        }
        out
    }

    pub fn map<D: Coefficient, F: FnMut(&C) -> D>(&self, mut f: F) -> ThetaPoly<D> {
        ThetaPoly::from_coeffs(self.coeffs.iter().map(|(k, c)| (*k, f(c))))
    }
}

impl ThetaPoly<f64> {
    pub fn eval(&self, theta: f64) -> f64 {
        self.coeffs.iter().map(|(k, c)| c * theta.powi(*k as i32)).sum()
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let degrees: std::collections::BTreeSet<usize> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        degrees
            .into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).abs())
            .fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, |a, b| a * b)
    }
}

impl fmt::Display for ThetaPoly<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => format!("{c:.12e}"),
                1 => format!("{c:.12e}*theta"),
                _ => format!("{c:.12e}*theta^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for ThetaPoly<LinComb<B>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*theta"),
                _ => format!("({c})*theta^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lc(terms: &[(&'static str, Rational)]) -> LinComb<&'static str> {
        LinComb::from_terms(terms.iter().cloned())
    }

    #[test]
    fn add_cancels_and_collects() {
        assert!((lc(&[("w", int(1))]) + lc(&[("w", int(-1))])).is_zero());
        assert_eq!(
            lc(&[("u", int(1))]) + lc(&[("v", int(2))]),
            lc(&[("u", int(1)), ("v", int(2))])
        );
        assert_eq!(
            lc(&[("u", rat(1, 2))]) + lc(&[("u", rat(1, 3))]),
            lc(&[("u", rat(5, 6))])
        );
    }

    #[test]
    fn scaling() {
        assert!(lc(&[("u", int(5))]).scale(&int(0)).is_zero());
        let a = lc(&[("u", rat(3, 7)), ("v", int(-2))]);
        assert_eq!(a.scale(&int(1)), a);
        assert_eq!(lc(&[("u", rat(3, 4))]).scale(&rat(2, 3)), lc(&[("u", rat(1, 2))]));
    }

    #[test]
    fn bilinear_extension() {
        let f = |_: &&str, _: &&str| lc(&[("w", int(1))]);
        let empty: LinComb<&str> = LinComb::zero();
        assert!(LinComb::bilinear(&empty, &lc(&[("v", int(1))]), f).is_zero());
        assert_eq!(
            LinComb::bilinear(&lc(&[("u", int(1))]), &lc(&[("v", int(1))]), f),
            lc(&[("w", int(1))])
        );
        assert_eq!(
            LinComb::bilinear(&lc(&[("u", int(2))]), &lc(&[("v", rat(1, 2))]), f),
            lc(&[("w", int(1))])
        );
    }

    #[test]
    fn display_orders_and_signs() {
        let a = lc(&[("b", rat(-1, 2)), ("a", int(3))]);
        assert_eq!(a.to_string(), "3*a - 1/2*b");
        assert_eq!(LinComb::<&str>::zero().to_string(), "0");
    }

    #[test]
    fn theta_derivatives() {
        let theta_sq = ThetaPoly::monomial(2, int(1));
        assert_eq!(theta_sq.derive(1), ThetaPoly::monomial(1, int(2)));
        assert!(theta_sq.derive(3).is_zero());
        assert_eq!(theta_sq.derive(3).degree(), None);
        let p = ThetaPoly::from_coeffs([(2, rat(1, 2)), (1, rat(7, 3))]);
        assert_eq!(p.derive(2), ThetaPoly::constant(int(1)));
    }

    #[test]
    fn theta_leading_coefficient_never_zero() {
        let p = ThetaPoly::from_coeffs([(3, int(1)), (1, int(2))]);
        let q = ThetaPoly::from_coeffs([(3, int(-1))]);
        assert_eq!(p.add(&q).degree(), Some(1));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_lc() -> impl Strategy<Value = LinComb<u8>> {
        proptest::collection::vec((0u8..6, arb_rational()), 0..6).prop_map(LinComb::from_terms)
    }

    fn arb_poly() -> impl Strategy<Value = ThetaPoly<f64>> {
        proptest::collection::vec((0usize..6, -10i32..10), 0..6)
            .prop_map(|v| ThetaPoly::from_coeffs(v.into_iter().map(|(k, c)| (k, c as f64))))
    }

    proptest! {
        #[test]
        fn add_is_associative_and_commutative(a in arb_lc(), b in arb_lc(), c in arb_lc()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn scale_distributes(a in arb_lc(), b in arb_lc(), s in arb_rational()) {
            prop_assert_eq!((&a + &b).scale(&s), a.scale(&s) + b.scale(&s));
        }

        #[test]
        fn rational_round_trip(a in any::<i64>(), b in 1..i64::MAX, c in any::<i64>(), d in 1..i64::MAX) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }

        #[test]
        fn derivative_leibniz(p in arb_poly(), q in arb_poly()) {
            let lhs = p.mul(&q).derive(1);
            let rhs = p.derive(1).mul(&q).add(&p.mul(&q.derive(1)));
            prop_assert!(lhs.max_abs_diff(&rhs) == 0.0);
        }
    }
}
