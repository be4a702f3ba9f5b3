//! Words over the two alphabets, shuffle and quasi-shuffle products, the
//! deconcatenation coproduct and the substitution `y_n ↦ x0^(n-1) x1`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, TensorPair};

/// A letter of an alphabet carrying an optional commutative internal
/// product. Ordering must agree with the lexicographic order of tokens.
pub trait Letter: Clone + Ord + Hash + fmt::Debug + fmt::Display {
    /// Parses a single letter token such as `x0` or `y12`.
    fn parse_token(token: &str) -> Option<Self>;

    /// Internal product `[ab]`; `None` means the product vanishes.
    fn contract(&self, _other: &Self) -> Option<Self> {
        None
    }

    fn weight(&self) -> u64;
}

/// Letters of the integral-picture alphabet `{x0, x1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum XLetter {
    X0,
    X1,
}

impl XLetter {
    pub fn swap(self) -> Self {
        match self {
            XLetter::X0 => XLetter::X1,
            XLetter::X1 => XLetter::X0,
        }
    }
}

impl fmt::Display for XLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XLetter::X0 => write!(f, "x0"),
            XLetter::X1 => write!(f, "x1"),
        }
    }
}

impl Letter for XLetter {
    fn parse_token(token: &str) -> Option<Self> {
        match token {
            "x0" => Some(XLetter::X0),
            "x1" => Some(XLetter::X1),
            _ => None,
        }
    }

    fn weight(&self) -> u64 {
        1
    }
}

/// Letter `y_n` of the sum-picture alphabet, `n ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct YLetter(u32);

impl YLetter {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(YLetter(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl Ord for YLetter {
    // Decimal token order: y1 < y10 < y2.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = [0u8; 10];
        let mut b = [0u8; 10];
        let da = decimal_digits(self.0, &mut a);
        let db = decimal_digits(other.0, &mut b);
        da.cmp(db)
    }
}

impl PartialOrd for YLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn decimal_digits(mut n: u32, buf: &mut [u8; 10]) -> &[u8] {
    let mut start = buf.len();
    loop {
        start -= 1;
        buf[start] = b'0' + (n % 10) as u8;
        n /= 10;
        if n == 0 {
            break;
        }
    }
    &buf[start..]
}

impl fmt::Display for YLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}", self.0)
    }
}

impl Letter for YLetter {
    fn parse_token(token: &str) -> Option<Self> {
        let digits = token.strip_prefix('y')?;
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
            return None;
        }
        digits.parse().ok().and_then(YLetter::new)
    }

    fn contract(&self, other: &Self) -> Option<Self> {
        Some(YLetter(self.0 + other.0))
    }

    fn weight(&self) -> u64 {
        self.0 as u64
    }
}

/// A finite sequence of letters; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word<A>(Vec<A>);

pub type XWord = Word<XLetter>;
pub type YWord = Word<YLetter>;

impl<A: Letter> Word<A> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<A>) -> Self {
        Word(letters)
    }

    pub fn letter(a: A) -> Self {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[A] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(Letter::weight).sum()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Right concatenation by a single letter.
    pub fn appended(&self, a: A) -> Self {
        let mut letters = self.0.clone();
        letters.push(a);
        Word(letters)
    }

    pub fn prefix(&self, len: usize) -> Self {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, start: usize) -> Self {
        Word(self.0[start..].to_vec())
    }
}

impl<A: Letter> FromIterator<A> for Word<A> {
    fn from_iter<I: IntoIterator<Item = A>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<A: Letter> fmt::Display for Word<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl<A: Letter> FromStr for Word<A> {
    type Err = Error;

    /// `word := letter ('.' letter)* | 'e'`, whitespace ignored.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty input; write `e` for the empty word".into(),
            });
        }
        if trimmed == "e" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut offset = s.len() - s.trim_start().len();
        for token in trimmed.split('.') {
            let lead = token.len() - token.trim_start().len();
            let tok = token.trim();
            if tok.is_empty() {
                return Err(Error::Parse {
                    position: offset + lead,
                    message: "expected a letter".into(),
                });
            }
            match A::parse_token(tok) {
                Some(a) => letters.push(a),
                None => {
                    return Err(Error::UnknownDecoration {
                        token: tok.to_string(),
                        position: offset + lead,
                    })
                }
            }
            offset += token.len() + 1;
        }
        Ok(Word(letters))
    }
}

/// Quasi-shuffle with an explicit internal product on letters.
///
/// Uses the first-letter recursion
/// `au ⋆ bv = a(u ⋆ bv) + b(au ⋆ v) + [ab](u ⋆ v)`, tabulated over all
/// suffix pairs so each quasi-shuffle is produced exactly once.
pub fn quasi_shuffle_with<A, F>(u: &Word<A>, v: &Word<A>, contract: F) -> LinComb<Word<A>>
where
    A: Letter,
    F: Fn(&A, &A) -> Option<A>,
{
    let (p, q) = (u.len(), v.len());
    if p == 0 {
        return LinComb::basis(v.clone());
    }
    if q == 0 {
        return LinComb::basis(u.clone());
    }
    // table[i][j] = u[i..] ⋆ v[j..], filled from the back.
    let mut table: Vec<Vec<LinComb<Word<A>>>> = vec![vec![LinComb::zero(); q + 1]; p + 1];
    for i in (0..=p).rev() {
        for j in (0..=q).rev() {
            let cell = if i == p {
                LinComb::basis(v.suffix(j))
            } else if j == q {
                LinComb::basis(u.suffix(i))
            } else {
                let a = &u.0[i];
                let b = &v.0[j];
                let mut cell = prepend(a, &table[i + 1][j]);
                cell = cell + prepend(b, &table[i][j + 1]);
                if let Some(ab) = contract(a, b) {
                    cell = cell + prepend(&ab, &table[i + 1][j + 1]);
                }
                cell
            };
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

fn prepend<A: Letter>(a: &A, comb: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    comb.map_basis(|w| {
        let mut letters = Vec::with_capacity(w.len() + 1);
        letters.push(a.clone());
        letters.extend_from_slice(&w.0);
        Word(letters)
    })
}

/// Shuffle product: all order-preserving interleavings.
pub fn shuffle<A: Letter>(u: &Word<A>, v: &Word<A>) -> LinComb<Word<A>> {
    quasi_shuffle_with(u, v, |_, _| None)
}

/// Quasi-shuffle product using the alphabet's own internal product.
pub fn quasi_shuffle<A: Letter>(u: &Word<A>, v: &Word<A>) -> LinComb<Word<A>> {
    quasi_shuffle_with(u, v, A::contract)
}

pub fn shuffle_lc<A: Letter>(a: &LinComb<Word<A>>, b: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    LinComb::bilinear(a, b, shuffle)
}

pub fn quasi_shuffle_lc<A: Letter>(a: &LinComb<Word<A>>, b: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    LinComb::bilinear(a, b, quasi_shuffle)
}

/// Deconcatenation coproduct `Σ prefix ⊗ suffix`.
pub fn deconcat<A: Letter>(w: &Word<A>) -> LinComb<TensorPair<Word<A>>> {
    LinComb::from_terms((0..=w.len()).map(|r| (TensorPair::new(w.prefix(r), w.suffix(r)), num_traits::One::one())))
}

pub fn deconcat_lc<A: Letter>(a: &LinComb<Word<A>>) -> LinComb<TensorPair<Word<A>>> {
    a.flat_map(deconcat)
}

/// `y_n ↦ x0^(n-1) x1`, extended as a monoid morphism.
pub fn s_map(w: &YWord) -> XWord {
    let mut letters = Vec::with_capacity(w.weight() as usize);
    for y in w.letters() {
        letters.extend(std::iter::repeat_n(XLetter::X0, y.index() as usize - 1));
        letters.push(XLetter::X1);
    }
    Word(letters)
}

pub fn s_map_lc(a: &LinComb<YWord>) -> LinComb<XWord> {
    a.map_basis(s_map)
}

/// Inverse of [`s_map`] on its image (words ending in `x1`, or empty).
pub fn s_inverse(v: &XWord) -> Result<YWord> {
    if let Some(&last) = v.letters().last() {
        if last != XLetter::X1 {
            return Err(Error::NotInImage(v.to_string()));
        }
    }
    let mut letters = Vec::new();
    let mut run = 0u32;
    for x in v.letters() {
        match x {
            XLetter::X0 => run += 1,
            XLetter::X1 => {
                letters.push(YLetter(run + 1));
                run = 0;
            }
        }
    }
    Ok(Word(letters))
}

impl Word<YLetter> {
    /// Empty, or first letter different from `y1`.
    pub fn is_convergent(&self) -> bool {
        self.0.first().is_none_or(|y| y.0 != 1)
    }

    /// Builds `y_{n1} ⋯ y_{nr}` from its indices.
    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        indices
            .iter()
            .map(|&n| YLetter::new(n).ok_or(Error::InvalidIndex))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|y| y.0).collect()
    }
}

impl Word<XLetter> {
    /// Empty, or starts with `x0` and ends with `x1`.
    pub fn is_convergent(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (None, _) => true,
            (Some(first), Some(last)) => *first == XLetter::X0 && *last == XLetter::X1,
            _ => unreachable!(),
        }
    }
}

/// All Y-words of the given weight, in lexicographic order.
pub fn y_words_of_weight(weight: u32) -> Vec<YWord> {
    fn rec(rest: u32, prefix: &mut Vec<YLetter>, out: &mut Vec<YWord>) {
        if rest == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for n in 1..=rest {
            prefix.push(YLetter(n));
            rec(rest - n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All words of exactly `len` letters drawn from `alphabet`.
pub fn words_of_length<A: Letter>(alphabet: &[A], len: usize) -> Vec<Word<A>> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| alphabet.iter().map(move |a| w.appended(a.clone())))
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::int;
    use proptest::prelude::*;

    fn y(s: &str) -> YWord {
        s.parse().unwrap()
    }

    fn x(s: &str) -> XWord {
        s.parse().unwrap()
    }

    fn lc_y(terms: &[(&str, i64)]) -> LinComb<YWord> {
        LinComb::from_terms(terms.iter().map(|(w, c)| (y(w), int(*c))))
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(y("y12.y3").indices(), vec![12, 3]);
        assert_eq!(y("y12 . y3").to_string(), "y12.y3");
        assert_eq!(x("x0.x1.x1").to_string(), "x0.x1.x1");
        assert_eq!(y("e"), Word::empty());
        assert!(matches!("y0".parse::<YWord>(), Err(Error::UnknownDecoration { .. })));
        assert!(matches!("x2".parse::<XWord>(), Err(Error::UnknownDecoration { .. })));
        assert!(matches!(
            "y1..y2".parse::<YWord>(),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(matches!("y1".parse::<XWord>(), Err(Error::UnknownDecoration { .. })));
    }

    #[test]
    fn letter_order_follows_tokens() {
        let mut ws = [y("y2"), y("y10"), y("y1.y2"), y("y1"), y("e")];
        ws.sort();
        let printed: Vec<String> = ws.iter().map(ToString::to_string).collect();
        let mut strings = printed.clone();
        strings.sort();
        assert_eq!(printed, strings);
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&Word::empty(), &x("x0.x1")), LinComb::basis(x("x0.x1")));
        assert_eq!(shuffle(&x("x1"), &x("x1")), LinComb::term(x("x1.x1"), int(2)));
        let prod = shuffle(&x("x0.x1"), &x("x0.x0.x1"));
        assert_eq!(prod.abs_mass(), int(10));
        // images under s^{-1}: y2y3 + 3 y3y2 + 6 y4y1
        let as_y = prod.map_basis(|w| s_inverse(w).unwrap());
        assert_eq!(as_y, lc_y(&[("y2.y3", 1), ("y3.y2", 3), ("y4.y1", 6)]));
    }

    #[test]
    fn quasi_shuffle_examples() {
        assert_eq!(
            quasi_shuffle(&y("y2"), &y("y3")),
            lc_y(&[("y2.y3", 1), ("y3.y2", 1), ("y5", 1)])
        );
        assert_eq!(quasi_shuffle(&y("y1"), &y("y1")), lc_y(&[("y1.y1", 2), ("y2", 1)]));
        assert_eq!(quasi_shuffle(&Word::empty(), &y("y4.y1")), lc_y(&[("y4.y1", 1)]));
    }

    #[test]
    fn deconcat_examples() {
        let e: YWord = Word::empty();
        assert_eq!(deconcat(&e), LinComb::basis(TensorPair::new(e.clone(), e.clone())));
        let d = deconcat(&y("y2.y3"));
        assert_eq!(d.len(), 3);
        assert_eq!(d.coeff(&TensorPair::new(y("y2"), y("y3"))), int(1));
        assert_eq!(d.coeff(&TensorPair::new(e.clone(), y("y2.y3"))), int(1));
        assert_eq!(deconcat(&x("x0.x1.x1")).len(), 4);
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(s_map(&y("y1")), x("x1"));
        assert_eq!(s_map(&y("y2")), x("x0.x1"));
        assert_eq!(s_map(&y("y3.y2")), x("x0.x0.x1.x0.x1"));
        assert_eq!(s_inverse(&x("x0.x1")).unwrap(), y("y2"));
        assert_eq!(s_inverse(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(s_inverse(&x("x1.x0.x1")).unwrap(), y("y1.y2"));
        assert!(matches!(s_inverse(&x("x1.x0")), Err(Error::NotInImage(_))));
    }

    #[test]
    fn convergence_predicates() {
        assert!(y("y2.y1").is_convergent());
        assert!(!y("y1.y2").is_convergent());
        assert!(YWord::empty().is_convergent());
        assert!(x("x0.x1.x1").is_convergent());
        assert!(!x("x1.x0.x1").is_convergent());
        assert!(!x("x0.x0").is_convergent());
    }

    #[test]
    fn substitution_bijects_convergent_words() {
        for weight in 1..=6u32 {
            let ys: Vec<YWord> = y_words_of_weight(weight)
                .into_iter()
                .filter(|w| w.is_convergent())
                .collect();
            let xs: Vec<XWord> = words_of_length(&[XLetter::X0, XLetter::X1], weight as usize)
                .into_iter()
                .filter(|v| v.is_convergent())
                .collect();
            let mut images: Vec<XWord> = ys.iter().map(s_map).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), ys.len());
            let mut xs_sorted = xs.clone();
            xs_sorted.sort();
            assert_eq!(images, xs_sorted);
        }
    }

    #[test]
    fn deconcat_is_coassociative() {
        for len in 0..=6 {
            for w in words_of_length(&[XLetter::X0, XLetter::X1], len) {
                let d = deconcat(&w);
                let left =
                    d.flat_map(|p| deconcat(&p.left).map_basis(|q| (q.left.clone(), q.right.clone(), p.right.clone())));
                let right =
                    d.flat_map(|p| deconcat(&p.right).map_basis(|q| (p.left.clone(), q.left.clone(), q.right.clone())));
                assert_eq!(left, right);
            }
        }
    }

    fn hopf_compatible<A: Letter>(u: &Word<A>, v: &Word<A>, prod: fn(&Word<A>, &Word<A>) -> LinComb<Word<A>>) -> bool {
        let lhs = deconcat_lc(&prod(u, v));
        let rhs = crate::lincomb::tensor_product(&deconcat(u), &deconcat(v), prod);
        lhs == rhs
    }

    #[test]
    fn bialgebra_compatibility() {
        let ys = [YLetter(1), YLetter(2)];
        let xs = [XLetter::X0, XLetter::X1];
        for total in 0..=5 {
            for p in 0..=total {
                for u in words_of_length(&xs, p) {
                    for v in words_of_length(&xs, total - p) {
                        assert!(hopf_compatible(&u, &v, shuffle));
                    }
                }
                for u in words_of_length(&ys, p) {
                    for v in words_of_length(&ys, total - p) {
                        assert!(hopf_compatible(&u, &v, quasi_shuffle));
                    }
                }
            }
        }
    }

    fn arb_y_word(max_len: usize) -> impl Strategy<Value = YWord> {
        proptest::collection::vec(1u32..4, 0..=max_len).prop_map(|v| Word(v.into_iter().map(YLetter).collect()))
    }

    fn arb_x_word(max_len: usize) -> impl Strategy<Value = XWord> {
        proptest::collection::vec(any::<bool>(), 0..=max_len).prop_map(|v| {
            Word(
                v.into_iter()
                    .map(|b| if b { XLetter::X1 } else { XLetter::X0 })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn quasi_shuffle_commutative_associative(u in arb_y_word(3), v in arb_y_word(3), w in arb_y_word(2)) {
            prop_assert_eq!(quasi_shuffle(&u, &v), quasi_shuffle(&v, &u));
            let left = quasi_shuffle_lc(&quasi_shuffle(&u, &v), &LinComb::basis(w.clone()));
            let right = quasi_shuffle_lc(&LinComb::basis(u.clone()), &quasi_shuffle(&v, &w));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn shuffle_commutative_associative(u in arb_x_word(3), v in arb_x_word(3), w in arb_x_word(2)) {
            prop_assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
            let left = shuffle_lc(&shuffle(&u, &v), &LinComb::basis(w.clone()));
            let right = shuffle_lc(&LinComb::basis(u.clone()), &shuffle(&v, &w));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn x_quasi_shuffle_is_shuffle(u in arb_x_word(4), v in arb_x_word(4)) {
            prop_assert_eq!(quasi_shuffle(&u, &v), shuffle(&u, &v));
        }

        #[test]
        fn shuffle_mass_is_binomial(u in arb_x_word(5), v in arb_x_word(5)) {
            let (p, q) = (u.len() as u64, v.len() as u64);
            let binom = (1..=q).fold(1u64, |acc, i| acc * (p + i) / i);
            prop_assert_eq!(shuffle(&u, &v).abs_mass(), int(binom as i64));
        }

        #[test]
        fn s_map_is_monoid_morphism(u in arb_y_word(4), v in arb_y_word(4)) {
            prop_assert_eq!(s_map(&u.concat(&v)), s_map(&u).concat(&s_map(&v)));
            prop_assert_eq!(s_inverse(&s_map(&u)).unwrap(), u.clone());
            prop_assert_eq!(s_map(&u).len() as u64, u.weight());
        }
    }
}
