//! Harmonic spaces `H_{2d}`, their equivariant spanning sets, the slice basis of
//! `Λ_{2d}` and the harmonic decomposition of arbitrary even-degree forms.

pub mod decompose;
pub mod generators;
pub mod reference;
pub mod slice_basis;
pub mod spanning;

pub use decompose::{harmonic_decompose, HarmonicComponents};
pub use generators::{cyclic_images, even_generator, odd_generator, signed_binomial};
pub use reference::{printed_family, scale_table, ScaleEntry};
pub use slice_basis::{slice_basis, SliceBasis};
pub use spanning::{
    equivariant_spanning_set, rep_multiplicities, rep_multiplicities_closed_form,
    EquivariantSignature, EquivariantSpanningSet, Relation, RepMultiplicities,
};

use crate::poly::PolyError;

/// Errors of basis construction and decomposition.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum HarmonicError {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("basis mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
