//! Associative spectra of linear quasigroups.
//!
//! Bracketings of `x1 x2 ... xn` correspond to plane binary trees with `n`
//! leaves. A linear quasigroup `x∘y = a·x + b·y` identifies two bracketings
//! exactly when the per-leaf differences of (left depth, right depth) lie in
//! a certain subgroup of `Z×Z`. This crate provides the tree machinery, the
//! depth-congruence relations and their class counts, the subgroup calculus
//! on `Z×Z`, and finite linear quasigroups over products of cyclic groups.

pub mod error;
pub mod grid;
pub mod quasigroup;
pub mod relations;
pub mod tables;
pub mod tree;
pub mod walk;

mod arith;

pub use error::{Error, Result};
pub use grid::{
    canonical_grid, coatoms, kernel_of_pair, span_difference, AbelianPairAction, Grid, Index,
    Treealisation,
};
pub use quasigroup::{
    consequence, Classification, Component, Consequence, IdentitySpec, LinearQuasigroup,
    SatisfactionMethod,
};
pub use relations::{
    count_classes, count_classes_with, modular_catalan, normalize_relation, CountOptions, LeafKey,
    Normalized, RelationSpec,
};
pub use tree::{
    catalan, enumerate_trees, BinaryTree, Bracketing, DepthProfile, Divergence, TextStyle,
    DEFAULT_MAX_LEAVES,
};
