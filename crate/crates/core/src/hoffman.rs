//! Hoffman's exponential and logarithm between the quasi-shuffle and
//! shuffle Hopf algebras, built from integer compositions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational};
use crate::words::{Letter, Word};

/// A composition `(i1, …, ir)` of `k = i1 + … + ir`, all parts positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        (!parts.is_empty() && parts.iter().all(|&p| p > 0)).then_some(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `2^(k-1)` compositions of `k`, in lexicographic order of their parts.
pub fn compositions(k: usize) -> Vec<Composition> {
    fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=rest {
            prefix.push(first);
            rec(rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, &mut Vec::new(), &mut out);
    }
    out
}

/// `I[u]`: each block of consecutive letters is replaced by its internal
/// product. `Ok(None)` when some block product vanishes.
pub fn apply_composition<A: Letter>(composition: &Composition, u: &Word<A>) -> Result<Option<Word<A>>> {
    if composition.total() != u.len() {
        return Err(Error::LengthMismatch {
            composition: composition.total(),
            length: u.len(),
        });
    }
    let mut letters = Vec::with_capacity(composition.0.len());
    let mut rest = u.letters();
    for &part in &composition.0 {
        let (block, tail) = rest.split_at(part);
        rest = tail;
        let mut merged = block[0].clone();
        for a in &block[1..] {
            match merged.contract(a) {
                Some(m) => merged = m,
                None => return Ok(None),
            }
        }
        letters.push(merged);
    }
    Ok(Some(Word::new(letters)))
}

fn composition_sum<A, F>(u: &Word<A>, weight: F) -> LinComb<Word<A>>
where
    A: Letter,
    F: Fn(&Composition) -> Rational,
{
    if u.is_empty() {
        return LinComb::basis(Word::empty());
    }
    let mut out = LinComb::zero();
    for comp in compositions(u.len()) {
        if let Some(w) = apply_composition(&comp, u).expect("composition matches word length") {
            out.add_term(w, weight(&comp));
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `exp u = Σ_I 1/(i1!⋯ir!) I[u]`.
pub fn exp_map<A: Letter>(u: &Word<A>) -> LinComb<Word<A>> {
    composition_sum(u, |comp| {
        let den = comp.parts().iter().fold(BigInt::one(), |acc, &i| acc * factorial(i));
        Rational::new(BigInt::one(), den)
    })
}

/// `log u = Σ_I (−1)^(k−r)/(i1⋯ir) I[u]`.
pub fn log_map<A: Letter>(u: &Word<A>) -> LinComb<Word<A>> {
    let k = u.len();
    composition_sum(u, |comp| {
        let r = comp.parts().len();
        let den = comp.parts().iter().fold(BigInt::one(), |acc, &i| acc * BigInt::from(i));
        let sign = if (k - r).is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        Rational::new(sign, den)
    })
}

pub fn exp_lc<A: Letter>(a: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    a.flat_map(exp_map)
}

pub fn log_lc<A: Letter>(a: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    a.flat_map(log_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{int, rat};
    use crate::words::{XLetter, XWord, YWord};

    fn yw(s: &str) -> YWord {
        s.parse().unwrap()
    }

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(1), vec![Composition(vec![1])]);
        let three: Vec<String> = compositions(3).iter().map(ToString::to_string).collect();
        assert_eq!(three, vec!["(1,1,1)", "(1,2)", "(2,1)", "(3)"]);
        assert_eq!(compositions(6).len(), 32);
        assert!(compositions(0).is_empty());
    }

    #[test]
    fn block_products() {
        let c = |p: &[usize]| Composition::new(p.to_vec()).unwrap();
        assert_eq!(apply_composition(&c(&[1, 1]), &yw("y1.y2")).unwrap(), Some(yw("y1.y2")));
        assert_eq!(apply_composition(&c(&[2]), &yw("y1.y2")).unwrap(), Some(yw("y3")));
        assert_eq!(
            apply_composition(&c(&[2, 1]), &yw("y1.y1.y2")).unwrap(),
            Some(yw("y2.y2"))
        );
        assert_eq!(
            apply_composition(&c(&[2]), &yw("y1")),
            Err(Error::LengthMismatch {
                composition: 2,
                length: 1
            })
        );
        let x: XWord = "x0.x1".parse().unwrap();
        assert_eq!(apply_composition(&c(&[2]), &x).unwrap(), None);
    }

    // v1 = y1, v2 = y2, v3 = y4 keep every block product distinguishable.
    #[test]
    fn exp_and_log_displays() {
        assert_eq!(exp_map(&yw("y1")), LinComb::basis(yw("y1")));
        assert_eq!(log_map(&yw("y1")), LinComb::basis(yw("y1")));
        assert_eq!(
            exp_map(&yw("y1.y2")),
            LinComb::from_terms([(yw("y1.y2"), int(1)), (yw("y3"), rat(1, 2))])
        );
        assert_eq!(
            log_map(&yw("y1.y2")),
            LinComb::from_terms([(yw("y1.y2"), int(1)), (yw("y3"), rat(-1, 2))])
        );
        assert_eq!(
            exp_map(&yw("y1.y2.y4")),
            LinComb::from_terms([
                (yw("y1.y2.y4"), int(1)),
                (yw("y3.y4"), rat(1, 2)),
                (yw("y1.y6"), rat(1, 2)),
                (yw("y7"), rat(1, 6)),
            ])
        );
        assert_eq!(
            log_map(&yw("y1.y2.y4")),
            LinComb::from_terms([
                (yw("y1.y2.y4"), int(1)),
                (yw("y3.y4"), rat(-1, 2)),
                (yw("y1.y6"), rat(-1, 2)),
                (yw("y7"), rat(1, 3)),
            ])
        );
    }

    #[test]
    fn zero_internal_product_gives_identity() {
        for len in 0..=5 {
            for w in crate::words::words_of_length(&[XLetter::X0, XLetter::X1], len) {
                assert_eq!(exp_map(&w), LinComb::basis(w.clone()));
                assert_eq!(log_map(&w), LinComb::basis(w.clone()));
            }
        }
    }
}
