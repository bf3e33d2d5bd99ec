//! Rational invariants of even-degree ternary forms under the orthogonal group.
//!
//! The crate builds signed-permutation equivariant bases of harmonic
//! polynomials, reduces forms to the diagonal-quadratic slice, evaluates a
//! minimal generating set of rational invariants, rewrites invariant rational
//! functions in those generators and reconstructs forms from invariant values.
//!
//! Module layout:
//! - [`poly`]: exact ternary forms, the substitution action, apolar product, Laplacian.
//! - [`harmonic`]: closed-formula generators, equivariant spanning sets, slice bases,
//!   harmonic decomposition.
//! - [`slice`]: symmetric 3×3 eigendecomposition and rotation into the slice.
//! - [`invariants`]: generator evaluation, equivalence, reconstruction.
//! - [`rewrite`]: normal-form rewriting of invariants in the generators.
//! - [`expr`]: the text grammar shared by form and expression parsing.

#![allow(clippy::needless_range_loop)]

pub mod expr;
pub mod harmonic;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod slice;

pub use harmonic::{
    EquivariantSignature, EquivariantSpanningSet, HarmonicComponents, Relation, SliceBasis,
};
pub use invariants::{
    Equivalence, InvariantError, InvariantVector, QuadraticInvariants, QuarticAuxInvariants,
};
pub use poly::{Matrix3, NumericForm, PolyError, Rational, SignedPermutation, TernaryForm};
pub use rewrite::{RationalExpr, RewriteError};
pub use slice::{EigenDecomposition, SliceCoordinates, SliceError, SymmetricMatrix3};

/// Default genericity tolerance of the evaluation pipeline.
pub const DEFAULT_TOL: f64 = 1e-7;

/// Relative comparison `|x − y| ≤ tol·(1 + max(|x|, |y|))`.
pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()))
}
