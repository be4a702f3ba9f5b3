//! Exact symbolic engine for the shuffle and quasi-shuffle Hopf algebras of
//! words and the Hopf algebra of decorated rooted forests, with simple and
//! contracting arborification, regularized multiple zeta values and the
//! operator ρ relating the two regularizations.
//!
//! ```
//! use arbormz::prelude::*;
//!
//! let tree: Forest<XLetter> = "x1(x0,x1(x0))".parse().unwrap();
//! assert_eq!(arborify_x(&tree).to_string(), "2*x0.x0.x1.x1 + 1*x0.x1.x0.x1");
//! ```

pub mod arborify;
pub mod cli;
pub mod error;
pub mod forests;
pub mod hoffman;
pub mod lincomb;
pub mod selftest;
pub mod verify;
pub mod words;
pub mod zeta;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::arborify::{arborify, arborify_x, arborify_y, ladder, s_tree, Flavor};
    pub use crate::error::{Error, Result};
    pub use crate::forests::{b_plus, coproduct, enumerate_trees, Forest, Tree};
    pub use crate::hoffman::{exp_map, log_map};
    pub use crate::lincomb::{LinComb, Rational, TensorPair, ThetaPoly};
    pub use crate::words::{deconcat, quasi_shuffle, s_inverse, s_map, shuffle, Word, XLetter, XWord, YLetter, YWord};
    pub use crate::zeta::{eval_mzv, reg_qsh, reg_sh, rho, zeta_tree_x, zeta_tree_y, MzvIndex};
}
