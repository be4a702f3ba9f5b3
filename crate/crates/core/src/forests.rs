//! Decorated non-planar rooted trees and forests in canonical form, with the
//! grafting operator and the admissible-cut coproduct.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational, TensorPair};
use crate::words::Letter;

/// A decorated rooted tree. Children are kept sorted in canonical order,
/// so structural equality is equality of non-planar trees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree<D> {
    decoration: D,
    children: Vec<Tree<D>>,
    size: usize,
}

impl<D: Ord> Ord for Tree<D> {
    /// Vertex count, then root decoration, then the sorted child lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.decoration.cmp(&other.decoration))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl<D: Ord> PartialOrd for Tree<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<D: Letter> Tree<D> {
    pub fn leaf(decoration: D) -> Self {
        Tree {
            decoration,
            children: Vec::new(),
            size: 1,
        }
    }

    pub fn decoration(&self) -> &D {
        &self.decoration
    }

    pub fn children(&self) -> &[Tree<D>] {
        &self.children
    }

    /// The forest of root subtrees.
    pub fn branches(&self) -> Forest<D> {
        Forest {
            trees: self.children.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Decorations of all vertices with no children.
    pub fn leaves(&self) -> Vec<&D> {
        let mut out = Vec::new();
        self.visit_leaves(&mut out);
        out
    }

    fn visit_leaves<'a>(&'a self, out: &mut Vec<&'a D>) {
        if self.children.is_empty() {
            out.push(&self.decoration);
        }
        for c in &self.children {
            c.visit_leaves(out);
        }
    }

    /// Decorations in preorder.
    pub fn decorations(&self) -> Vec<&D> {
        let mut out = vec![&self.decoration];
        for c in &self.children {
            out.extend(c.decorations());
        }
        out
    }

    pub fn into_forest(self) -> Forest<D> {
        Forest { trees: vec![self] }
    }
}

/// Grafting operator `B₊^d`: a new root decorated `d` carrying the trees of `forest`.
pub fn b_plus<D: Letter>(d: D, forest: &Forest<D>) -> Tree<D> {
    Tree {
        decoration: d,
        size: 1 + forest.grade(),
        children: forest.trees.clone(),
    }
}

/// A commutative product of trees; the empty forest is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Forest<D> {
    trees: Vec<Tree<D>>,
}

impl<D: Ord> Ord for Forest<D> {
    fn cmp(&self, other: &Self) -> Ordering {
        let ga: usize = self.trees.iter().map(|t| t.size).sum();
        let gb: usize = other.trees.iter().map(|t| t.size).sum();
        ga.cmp(&gb).then_with(|| self.trees.cmp(&other.trees))
    }
}

impl<D: Ord> PartialOrd for Forest<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<D: Letter> Forest<D> {
    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn new(mut trees: Vec<Tree<D>>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn trees(&self) -> &[Tree<D>] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Total number of vertices.
    pub fn grade(&self) -> usize {
        self.trees.iter().map(|t| t.size).sum()
    }

    pub fn counit(&self) -> Rational {
        if self.trees.is_empty() {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// Multiset union.
    pub fn product(&self, other: &Self) -> Self {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        Forest::new(trees)
    }
}

impl<D: Letter> From<Tree<D>> for Forest<D> {
    fn from(t: Tree<D>) -> Self {
        t.into_forest()
    }
}

pub fn forest_product_lc<D: Letter>(a: &LinComb<Forest<D>>, b: &LinComb<Forest<D>>) -> LinComb<Forest<D>> {
    LinComb::bilinear(a, b, |f, g| LinComb::basis(f.product(g)))
}

/// Admissible-cut coproduct `Σ crown ⊗ trunk`, computed tree by tree via
/// `Δ(B₊^d f) = B₊^d f ⊗ 1 + (id ⊗ B₊^d) Δ(f)` and multiplicativity.
pub fn coproduct<D: Letter>(forest: &Forest<D>) -> LinComb<TensorPair<Forest<D>>> {
    let mut memo = HashMap::new();
    coproduct_memo(forest, &mut memo)
}

pub fn coproduct_lc<D: Letter>(a: &LinComb<Forest<D>>) -> LinComb<TensorPair<Forest<D>>> {
    let mut memo = HashMap::new();
    a.flat_map(|f| coproduct_memo(f, &mut memo))
}

type CoproductMemo<D> = HashMap<Tree<D>, LinComb<TensorPair<Forest<D>>>>;

fn coproduct_memo<D: Letter>(forest: &Forest<D>, memo: &mut CoproductMemo<D>) -> LinComb<TensorPair<Forest<D>>> {
    let mut acc = LinComb::basis(TensorPair::new(Forest::empty(), Forest::empty()));
    for t in &forest.trees {
        let dt = coproduct_tree(t, memo);
        acc = crate::lincomb::tensor_product(&acc, &dt, |f, g| LinComb::basis(f.product(g)));
    }
    acc
}

fn coproduct_tree<D: Letter>(t: &Tree<D>, memo: &mut CoproductMemo<D>) -> LinComb<TensorPair<Forest<D>>> {
    if let Some(hit) = memo.get(t) {
        return hit.clone();
    }
    let below = coproduct_memo(&t.branches(), memo);
    let mut out = LinComb::basis(TensorPair::new(t.clone().into_forest(), Forest::empty()));
    for (pair, c) in below.iter() {
        let grafted = b_plus(t.decoration.clone(), &pair.right).into_forest();
        out.add_term(TensorPair::new(pair.left.clone(), grafted), c.clone());
    }
    memo.insert(t.clone(), out.clone());
    out
}

/// All canonical trees with exactly `n` vertices decorated from `decorations`,
/// sorted in canonical order.
pub fn enumerate_trees<D: Letter>(n: usize, decorations: &[D]) -> Vec<Tree<D>> {
    if n == 0 || decorations.is_empty() {
        return Vec::new();
    }
    let mut decos: Vec<D> = decorations.to_vec();
    decos.sort();
    decos.dedup();
    // by_size[k] = all trees with k vertices, sorted.
    let mut by_size: Vec<Vec<Tree<D>>> = vec![Vec::new()];
    for k in 1..=n {
        let smaller: Vec<&Tree<D>> = by_size.iter().flatten().collect();
        let mut level = Vec::new();
        let mut children = Vec::new();
        let mut forests = Vec::new();
        child_multisets(&smaller, 0, k - 1, &mut children, &mut forests);
        for d in &decos {
            for f in &forests {
                level.push(b_plus(d.clone(), f));
            }
        }
        level.sort();
        by_size.push(level);
    }
    by_size.pop().unwrap_or_default()
}

// Multisets of trees (non-decreasing index into `pool`) with total size `rest`.
fn child_multisets<D: Letter>(
    pool: &[&Tree<D>],
    start: usize,
    rest: usize,
    current: &mut Vec<Tree<D>>,
    out: &mut Vec<Forest<D>>,
) {
    if rest == 0 {
        out.push(Forest::new(current.clone()));
        return;
    }
    for i in start..pool.len() {
        let t = pool[i];
        if t.size > rest {
            continue;
        }
        current.push(t.clone());
        child_multisets(pool, i, rest - t.size, current, out);
        current.pop();
    }
}

/// All canonical forests with exactly `n` vertices.
pub fn enumerate_forests<D: Letter>(n: usize, decorations: &[D]) -> Vec<Forest<D>> {
    let pool: Vec<Tree<D>> = (1..=n).flat_map(|k| enumerate_trees(k, decorations)).collect();
    let refs: Vec<&Tree<D>> = pool.iter().collect();
    let mut out = Vec::new();
    child_multisets(&refs, 0, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl<D: Letter> fmt::Display for Tree<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decoration)?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<D: Letter> fmt::Display for Forest<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "e");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            found => Err(self.error(match found {
                Some(found) => format!("expected `{}`, found `{}`", c as char, found as char),
                None => format!("expected `{}`, found end of input", c as char),
            })),
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Parse {
            position: self.pos,
            message,
        }
    }

    fn decoration<D: Letter>(&mut self) -> Result<D> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(match self.src.get(self.pos) {
                Some(c) => format!("expected a decoration, found `{}`", *c as char),
                None => "expected a decoration, found end of input".into(),
            }));
        }
        let token = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        D::parse_token(token).ok_or_else(|| Error::UnknownDecoration {
            token: token.to_string(),
            position: start,
        })
    }

    fn tree<D: Letter>(&mut self) -> Result<Tree<D>> {
        let d = self.decoration()?;
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            children.push(self.tree()?);
            while self.peek() == Some(b',') {
                self.pos += 1;
                children.push(self.tree()?);
            }
            self.expect(b')')?;
        }
        Ok(b_plus(d, &Forest::new(children)))
    }

    fn forest<D: Letter>(&mut self) -> Result<Forest<D>> {
        if self.peek() == Some(b'e') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(Forest::empty());
            }
            self.pos = save;
        }
        let mut trees = vec![self.tree()?];
        while self.peek() == Some(b';') {
            self.pos += 1;
            trees.push(self.tree()?);
        }
        Ok(Forest::new(trees))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

/// `tree := decoration ('(' tree (',' tree)* ')')?`
pub fn parse_tree<D: Letter>(text: &str) -> Result<Tree<D>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.tree()?;
    p.finish()?;
    Ok(t)
}

/// `forest := tree (';' tree)* | 'e'`
pub fn parse_forest<D: Letter>(text: &str) -> Result<Forest<D>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.forest()?;
    p.finish()?;
    Ok(f)
}

impl<D: Letter> FromStr for Tree<D> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

impl<D: Letter> FromStr for Forest<D> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_forest(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::int;
    use crate::words::{XLetter, YLetter};

    fn yf(s: &str) -> Forest<YLetter> {
        s.parse().unwrap()
    }

    fn yl(n: u32) -> YLetter {
        YLetter::new(n).unwrap()
    }

    fn pair(a: &str, b: &str) -> TensorPair<Forest<YLetter>> {
        TensorPair::new(yf(a), yf(b))
    }

    #[test]
    fn grafting() {
        let single = b_plus(yl(2), &Forest::empty());
        assert_eq!(single, Tree::leaf(yl(2)));
        assert_eq!(single.size(), 1);
        let ladder = b_plus(XLetter::X1, &Tree::leaf(XLetter::X0).into_forest());
        assert_eq!(ladder.to_string(), "x1(x0)");
        let t = Tree::leaf(yl(3));
        let u = Tree::leaf(yl(1));
        let a = b_plus(yl(2), &Forest::new(vec![t.clone(), u.clone()]));
        let b = b_plus(yl(2), &Forest::new(vec![u, t]));
        assert_eq!(a, b);
    }

    #[test]
    fn forest_product_is_multiset_union() {
        let t = yf("y2(y1)");
        assert_eq!(Forest::empty().product(&t), t);
        assert_eq!(t.product(&t).trees().len(), 2);
        let s = yf("y3");
        assert_eq!(s.product(&t), t.product(&s));
    }

    #[test]
    fn parse_and_print() {
        let t: Tree<YLetter> = "y3(y1,y2)".parse().unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.decoration(), &yl(3));
        assert_eq!("y3(y2,y1)".parse::<Tree<YLetter>>().unwrap().to_string(), "y3(y1,y2)");
        assert_eq!(
            " x1( x0 , x1(x0) ) ".parse::<Tree<XLetter>>().unwrap().to_string(),
            "x1(x0,x1(x0))"
        );
        assert_eq!(
            "x1(x1(x0),x0)".parse::<Tree<XLetter>>().unwrap().to_string(),
            "x1(x0,x1(x0))"
        );
        assert_eq!(yf("e"), Forest::empty());
        assert_eq!(yf("y2;y1(y3)").to_string(), "y2;y1(y3)");
        assert!(matches!(
            parse_tree::<YLetter>("y3(y1,"),
            Err(Error::Parse { position: 6, .. })
        ));
        assert!(matches!(
            parse_tree::<YLetter>("y3(y1))"),
            Err(Error::Parse { position: 6, .. })
        ));
        assert!(matches!(
            parse_tree::<XLetter>("x1(y2)"),
            Err(Error::UnknownDecoration { position: 3, .. })
        ));
        assert!(matches!(
            parse_forest::<YLetter>("e;y1"),
            Err(Error::UnknownDecoration { .. })
        ));
    }

    #[test]
    fn coproduct_of_ladder_and_cherry() {
        let ladder = yf("y1(y1)");
        let expected = LinComb::from_terms([
            (pair("y1(y1)", "e"), int(1)),
            (pair("e", "y1(y1)"), int(1)),
            (pair("y1", "y1"), int(1)),
        ]);
        assert_eq!(coproduct(&ladder), expected);

        let cherry = yf("y1(y1,y1)");
        let expected = LinComb::from_terms([
            (pair("y1(y1,y1)", "e"), int(1)),
            (pair("e", "y1(y1,y1)"), int(1)),
            (pair("y1", "y1(y1)"), int(2)),
            (pair("y1;y1", "y1"), int(1)),
        ]);
        assert_eq!(coproduct(&cherry), expected);
    }

    #[test]
    fn single_vertex_is_primitive() {
        let d = coproduct(&yf("y4"));
        assert_eq!(
            d,
            LinComb::from_terms([(pair("y4", "e"), int(1)), (pair("e", "y4"), int(1))])
        );
        assert_eq!(coproduct(&Forest::<YLetter>::empty()), LinComb::basis(pair("e", "e")));
    }

    #[test]
    fn counit_and_grade() {
        assert_eq!(Forest::<YLetter>::empty().counit(), int(1));
        assert_eq!(yf("y1").counit(), int(0));
        assert_eq!(yf("y1(y1,y1)").grade(), 3);
    }

    #[test]
    fn tree_census() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_trees(n, &[yl(1)]).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
        let three = enumerate_trees(3, &[yl(1)]);
        let printed: Vec<String> = three.iter().map(ToString::to_string).collect();
        assert_eq!(printed, vec!["y1(y1,y1)", "y1(y1(y1))"]);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let trees = enumerate_trees(4, &[XLetter::X0, XLetter::X1]);
        let mut dedup = trees.clone();
        dedup.dedup();
        assert_eq!(trees.len(), dedup.len());
        assert!(trees.iter().all(|t| t.size() == 4));
    }

    #[test]
    fn counit_axioms() {
        for n in 0..=4 {
            for f in enumerate_forests(n, &[XLetter::X0, XLetter::X1]) {
                let d = coproduct(&f);
                let left = d.flat_map(|p| LinComb::term(p.right.clone(), p.left.counit()));
                let right = d.flat_map(|p| LinComb::term(p.left.clone(), p.right.counit()));
                assert_eq!(left, LinComb::basis(f.clone()));
                assert_eq!(right, LinComb::basis(f.clone()));
            }
        }
    }
}
