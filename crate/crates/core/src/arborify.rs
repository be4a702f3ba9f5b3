//! Simple and contracting arborification, ladder sections and the
//! ladder-based arborified substitution.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::forests::{b_plus, Forest, Tree};
use crate::lincomb::LinComb;
use crate::words::{quasi_shuffle, s_map, shuffle, Letter, Word, XLetter, XWord, YLetter, YWord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// Shuffle target; letters never contract.
    Simple,
    /// Quasi-shuffle target using the alphabet's internal product.
    Contracting,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Simple => write!(f, "simple"),
            Flavor::Contracting => write!(f, "contracting"),
        }
    }
}

/// A forest together with its image under one arborification flavor.
#[derive(Clone, PartialEq, Debug)]
pub struct ArborifiedExpansion<D: Letter> {
    pub source: Forest<D>,
    pub image: LinComb<Word<D>>,
    pub flavor: Flavor,
}

impl<D: Letter> ArborifiedExpansion<D> {
    pub fn new(source: Forest<D>, flavor: Flavor) -> Self {
        let image = arborify(&source, flavor);
        ArborifiedExpansion { source, image, flavor }
    }
}

/// The Hopf morphism sending `B₊^d` to right concatenation by `d` and forest
/// products to (quasi-)shuffles.
pub fn arborify<D: Letter>(forest: &Forest<D>, flavor: Flavor) -> LinComb<Word<D>> {
    let mut memo = HashMap::new();
    arborify_forest(forest, flavor, &mut memo)
}

pub fn arborify_lc<D: Letter>(a: &LinComb<Forest<D>>, flavor: Flavor) -> LinComb<Word<D>> {
    let mut memo = HashMap::new();
    a.flat_map(|f| arborify_forest(f, flavor, &mut memo))
}

/// Simple arborification on two-colour forests.
pub fn arborify_x(forest: &Forest<XLetter>) -> LinComb<XWord> {
    arborify(forest, Flavor::Simple)
}

/// Contracting arborification on integer-decorated forests.
pub fn arborify_y(forest: &Forest<YLetter>) -> LinComb<YWord> {
    arborify(forest, Flavor::Contracting)
}

type Memo<D> = HashMap<Tree<D>, LinComb<Word<D>>>;

fn arborify_forest<D: Letter>(forest: &Forest<D>, flavor: Flavor, memo: &mut Memo<D>) -> LinComb<Word<D>> {
    let product = match flavor {
        Flavor::Simple => shuffle::<D>,
        Flavor::Contracting => quasi_shuffle::<D>,
    };
    let mut acc = LinComb::basis(Word::empty());
    for t in forest.trees() {
        let image = arborify_tree(t, flavor, memo);
        acc = LinComb::bilinear(&acc, &image, product);
    }
    acc
}

fn arborify_tree<D: Letter>(t: &Tree<D>, flavor: Flavor, memo: &mut Memo<D>) -> LinComb<Word<D>> {
    if let Some(hit) = memo.get(t) {
        return hit.clone();
    }
    let below = arborify_forest(&t.branches(), flavor, memo);
    let out = below.map_basis(|w| w.appended(t.decoration().clone()));
    memo.insert(t.clone(), out.clone());
    out
}

/// Linear tree decorated top to bottom by the letters of `w`; the root
/// carries the last letter.
pub fn ladder<D: Letter>(w: &Word<D>) -> Result<Tree<D>> {
    let mut letters = w.letters().iter();
    let top = letters.next().ok_or(Error::EmptyLadder)?;
    Ok(letters.fold(Tree::leaf(top.clone()), |t, d| b_plus(d.clone(), &t.into_forest())))
}

/// Ladder as a forest; the empty word maps to the empty forest.
pub fn ladder_forest<D: Letter>(w: &Word<D>) -> Forest<D> {
    match ladder(w) {
        Ok(t) => t.into_forest(),
        Err(_) => Forest::empty(),
    }
}

pub fn ladder_x(w: &XWord) -> Result<Tree<XLetter>> {
    ladder(w)
}

pub fn ladder_y(w: &YWord) -> Result<Tree<YLetter>> {
    ladder(w)
}

/// `ℓ_X ∘ s ∘ a_Y`: contract-arborify, substitute, and re-ladder each word.
pub fn s_tree(forest: &Forest<YLetter>) -> LinComb<Forest<XLetter>> {
    arborify_y(forest).map_basis(|w| ladder_forest(&s_map(w)))
}

/// Every leaf decoration is at least 2.
pub fn is_convergent_tree_y(forest: &Forest<YLetter>) -> bool {
    divergence_y(forest).is_none()
}

/// Every root is `x1` and every leaf is `x0`; a single vertex is both and
/// therefore never convergent.
pub fn is_convergent_tree_x(forest: &Forest<XLetter>) -> bool {
    divergence_x(forest).is_none()
}

/// Describes the first vertex that breaks convergence, if any.
pub fn divergence_y(forest: &Forest<YLetter>) -> Option<String> {
    for t in forest.trees() {
        if let Some(leaf) = t.leaves().into_iter().find(|d| d.index() < 2) {
            return Some(format!("leaf decorated {leaf} in tree {t} makes the sum divergent"));
        }
    }
    None
}

pub fn divergence_x(forest: &Forest<XLetter>) -> Option<String> {
    for t in forest.trees() {
        if *t.decoration() != XLetter::X1 {
            return Some(format!(
                "root decorated {} in tree {t} makes the integral divergent (roots must be x1)",
                t.decoration()
            ));
        }
        if let Some(leaf) = t.leaves().into_iter().find(|d| **d != XLetter::X0) {
            return Some(format!(
                "leaf decorated {leaf} in tree {t} makes the integral divergent (leaves must be x0)"
            ));
        }
    }
    None
}
