//! C-incentive submonoids of (ℕ,+).
//!
//! A submonoid `M` is a *C-incentive* when `s + t + c ∈ M` for all non-zero
//! `s, t ∈ M` and every offset `c ∈ C`. The crate decides admissibility,
//! computes the smallest C-incentive containing a set, models the
//! tariff/adjustment pricing promotion that motivates the notion, and
//! enumerates the tree of numerical C-incentives.
//!
//! ```
//! use incentive_core::{closure_msg, IncentiveSpec};
//!
//! let c = IncentiveSpec::new([-3, 2]).unwrap();
//! let closure = closure_msg(&[5, 7, 9, 11], &c).unwrap();
//! assert_eq!(closure.generators.generators(), &[5, 7, 9, 11, 13]);
//! ```

pub mod cli;
pub mod error;
pub mod incentive;
pub mod monoid;
pub mod sequence;
pub mod tree;

pub use error::{Error, Result};
pub use incentive::{
    closure_members, closure_membership, closure_msg, closure_msg_with, is_admissible,
    is_incentive, ClosureKind, ClosureOptions, ClosureResult, Constraint, IncentiveSpec,
};
pub use monoid::{gcd_all, GenSet, Monoid, NumericalSemigroup};
pub use sequence::SequenceModel;
pub use tree::{
    brute_force_family, child_viable, children, decompose, decompose_with, enumerate_tree,
    enumerate_tree_with, is_finite_family, max_numerical_incentive, msg_after_removal,
    Decomposition, EnumerationBound, IncentiveTree, TreeNode, TreeOptions,
};
