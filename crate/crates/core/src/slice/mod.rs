//! Reduction of forms to the slice `Λ_{2d}` of diagonal quadratic part.

mod eigen;

pub use eigen::{eigendecompose, quadratic_matrix, EigenDecomposition, SymmetricMatrix3};

use serde::Serialize;

use crate::harmonic::decompose::{coefficient_vector, quadratic_part, quadratic_part_numeric};
use crate::harmonic::{slice_basis, EquivariantSignature, HarmonicError};
use crate::linalg;
use crate::poly::{
    rational_from_f64, Matrix3, NumericForm, Rational, SignedPermutation, TernaryForm,
};
use crate::scalar::Scalar;

/// Errors of the slice reduction.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SliceError {
    #[error("degree {found} is not supported here (expected {expected})")]
    WrongDegree { found: u32, expected: String },
    #[error("form is not in the slice: its quadratic part has off-diagonal terms")]
    NotInSlice,
    #[error("rational invariants are undefined at v: eigenvalue gap {gap:e} does not exceed {threshold:e}")]
    Degenerate { gap: f64, threshold: f64 },
    #[error("slice projection residual {residual:e} exceeds {bound:e}")]
    Residual { residual: f64, bound: f64 },
    #[error("coordinate layout does not match the slice basis of half degree {0}")]
    Layout(u32),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// Coordinates `v = Σ a_i w_{i,0} + Σ α_{i,j} w_{i,j} + α_∞ w_∞` in the slice basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceCoordinates<T = Rational> {
    pub half_degree: u32,
    /// Coefficients of `w_{1,0}, w_{2,0}, w_{3,0}`.
    pub a: [T; 3],
    /// `alpha[j − 1][i]` is the coefficient of `w_{i+1,j}` for `1 ≤ j < k_slice`.
    pub alpha: Vec<[T; 3]>,
    pub alpha_infinity: Option<T>,
}

impl<T: Scalar> SliceCoordinates<T> {
    /// Zero coordinates in the layout of `Λ_{2d}`.
    pub fn zero(d: u32) -> Result<Self, SliceError> {
        let b = slice_basis(d)?;
        Ok(SliceCoordinates {
            half_degree: d,
            a: std::array::from_fn(|_| T::zero()),
            alpha: vec![std::array::from_fn(|_| T::zero()); b.k_slice - 1],
            alpha_infinity: b.w_infinity.as_ref().map(|_| T::zero()),
        })
    }

    /// Builds coordinates from the flat order of [`crate::harmonic::SliceBasis::flat`].
    pub fn from_flat(d: u32, values: &[T]) -> Result<Self, SliceError> {
        let b = slice_basis(d)?;
        if values.len() != b.dimension() {
            return Err(SliceError::Layout(d));
        }
        let triple = |j: usize| -> [T; 3] { std::array::from_fn(|i| values[3 * j + i].clone()) };
        Ok(SliceCoordinates {
            half_degree: d,
            a: triple(0),
            alpha: (1..b.k_slice).map(triple).collect(),
            alpha_infinity: b.w_infinity.as_ref().map(|_| values[3 * b.k_slice].clone()),
        })
    }

    /// Flat order `3j + i`, then `α_∞`.
    pub fn to_flat(&self) -> Vec<T> {
        let mut out: Vec<T> = self.a.to_vec();
        for t in &self.alpha {
            out.extend(t.iter().cloned());
        }
        out.extend(self.alpha_infinity.iter().cloned());
        out
    }

    /// The triple with index `j`, `j = 0` being `a`.
    pub fn triple(&self, j: usize) -> &[T; 3] {
        if j == 0 {
            &self.a
        } else {
            &self.alpha[j - 1]
        }
    }

    /// Number of triples, `k_slice`.
    pub fn k_slice(&self) -> usize {
        self.alpha.len() + 1
    }

    /// Coordinates of `g·v` given those of `v`, for `g ∈ B3`.
    pub fn act(&self, g: &SignedPermutation, signature: &EquivariantSignature) -> Self {
        let image = |j: usize| -> [T; 3] {
            let (zeta, xi) = signature.get(j);
            let src = self.triple(j);
            let mut out: [T; 3] = std::array::from_fn(|_| T::zero());
            for (i, c) in src.iter().enumerate() {
                let (target, sign) = g.equivariant_image(i, zeta, xi);
                out[target] = if sign < 0 { -c.clone() } else { c.clone() };
            }
            out
        };
        SliceCoordinates {
            half_degree: self.half_degree,
            a: image(0),
            alpha: (1..self.k_slice()).map(image).collect(),
            alpha_infinity: self.alpha_infinity.clone(),
        }
    }

    /// Converts the scalar type.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> SliceCoordinates<U> {
        SliceCoordinates {
            half_degree: self.half_degree,
            a: std::array::from_fn(|i| f(&self.a[i])),
            alpha: self
                .alpha
                .iter()
                .map(|t| std::array::from_fn(|i| f(&t[i])))
                .collect(),
            alpha_infinity: self.alpha_infinity.as_ref().map(&f),
        }
    }
}

fn check_even(degree: u32) -> Result<u32, SliceError> {
    if degree < 2 || degree % 2 == 1 {
        return Err(SliceError::WrongDegree {
            found: degree,
            expected: "an even degree ≥ 2".into(),
        });
    }
    Ok(degree / 2)
}

/// Exact coordinates of a form lying in `Λ_{2d}`.
pub fn slice_coordinates(v: &TernaryForm) -> Result<SliceCoordinates<Rational>, SliceError> {
    let d = check_even(v.degree())?;
    let b = slice_basis(d)?;
    let coords = linalg::mat_vec(b.inverse_exact(), &coefficient_vector(v));
    let n = b.dimension();
    if coords[n..].iter().any(|c| !num_traits::Zero::is_zero(c)) {
        return Err(SliceError::NotInSlice);
    }
    SliceCoordinates::from_flat(d, &coords[..n])
}

/// The form with the given exact coordinates.
pub fn assemble(c: &SliceCoordinates<Rational>) -> Result<TernaryForm, SliceError> {
    let b = slice_basis(c.half_degree)?;
    let flat = c.to_flat();
    if flat.len() != b.dimension() {
        return Err(SliceError::Layout(c.half_degree));
    }
    Ok(b.combine(&flat))
}

/// Exact form closest to double-precision coordinates (each double is a dyadic rational).
pub fn assemble_f64(c: &SliceCoordinates<f64>) -> Result<TernaryForm, SliceError> {
    let exact = c.map(|x| rational_from_f64(*x).unwrap_or_default());
    assemble(&exact)
}

/// Double-precision coordinates of a numeric form in the slice, and the
/// largest off-diagonal quadratic coordinate.
pub fn slice_coordinates_numeric(
    v: &NumericForm,
) -> Result<(SliceCoordinates<f64>, f64), SliceError> {
    let d = check_even(v.degree)?;
    let b = slice_basis(d)?;
    let coords: Vec<f64> = b
        .inverse_f64()
        .iter()
        .map(|row| row.iter().zip(&v.coeffs).map(|(a, x)| a * x).sum())
        .collect();
    let n = b.dimension();
    let residual = coords[n..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    Ok((SliceCoordinates::from_flat(d, &coords[..n])?, residual))
}

/// Result of moving a form into the slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceReduction {
    pub coordinates: SliceCoordinates<f64>,
    pub eigen: EigenDecomposition,
    /// Largest off-diagonal quadratic coordinate of `g·v` before it was discarded.
    pub residual: f64,
}

fn reduce(
    v: &NumericForm,
    a: SymmetricMatrix3<f64>,
    tol: f64,
) -> Result<SliceReduction, SliceError> {
    let eigen = eigendecompose(&a);
    let threshold = tol * (1.0 + a.max_abs());
    if eigen.gap <= threshold {
        return Err(SliceError::Degenerate {
            gap: eigen.gap,
            threshold,
        });
    }
    let rotated = v.act(&eigen.rotation);
    let (coordinates, residual) = slice_coordinates_numeric(&rotated)?;
    let bound = 1e-8 * (1.0 + v.max_abs());
    if residual > bound {
        return Err(SliceError::Residual { residual, bound });
    }
    Ok(SliceReduction {
        coordinates,
        eigen,
        residual,
    })
}

/// Rotates `v` into the slice: diagonalizes its quadratic part, checks the
/// eigenvalue gap against `tol·(1 + ‖A‖_max)`, applies the rotation and projects.
pub fn rotate_to_slice(v: &TernaryForm, tol: f64) -> Result<SliceReduction, SliceError> {
    check_even(v.degree())?;
    let a = quadratic_matrix(&quadratic_part(v)?)?.to_f64();
    reduce(&v.to_numeric(), a, tol)
}

/// [`rotate_to_slice`] for a form with double-precision coefficients.
pub fn rotate_to_slice_numeric(v: &NumericForm, tol: f64) -> Result<SliceReduction, SliceError> {
    check_even(v.degree)?;
    let v2 = quadratic_part_numeric(v)?;
    let a = SymmetricMatrix3 {
        a11: v2.coeff(2, 0, 0),
        a22: v2.coeff(0, 2, 0),
        a33: v2.coeff(0, 0, 2),
        a12: v2.coeff(1, 1, 0) / 2.0,
        a13: v2.coeff(1, 0, 1) / 2.0,
        a23: v2.coeff(0, 1, 1) / 2.0,
    };
    reduce(v, a, tol)
}

/// `g·v` in double precision.
pub fn act_numeric(v: &TernaryForm, g: &Matrix3<f64>) -> NumericForm {
    v.to_numeric().act(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn form(s: &str) -> TernaryForm {
        TernaryForm::parse(s).unwrap()
    }

    #[test]
    fn q_times_x_squared_is_the_quadratic_slot() {
        let c = slice_coordinates(&form("x^4 + x^2 y^2 + x^2 z^2")).unwrap();
        assert_eq!(c.a, [int(0), int(0), int(0)]);
        let b = slice_basis(2).unwrap();
        assert_eq!(c.alpha[b.quadratic_index - 1], [int(1), int(0), int(0)]);
        assert!(c.alpha[..b.quadratic_index - 1]
            .iter()
            .flatten()
            .all(|x| *x == int(0)));
    }

    #[test]
    fn off_diagonal_quadratic_is_rejected() {
        let v = TernaryForm::q().mul(&form("x y"));
        assert_eq!(slice_coordinates(&v), Err(SliceError::NotInSlice));
    }

    #[test]
    fn coordinates_round_trip() {
        let b = slice_basis(3).unwrap();
        let flat: Vec<Rational> = (0..b.dimension())
            .map(|k| rat(k as i64 % 7 - 3, 1 + k as i64 % 4))
            .collect();
        let c = SliceCoordinates::from_flat(3, &flat).unwrap();
        let v = assemble(&c).unwrap();
        assert_eq!(slice_coordinates(&v).unwrap(), c);
    }

    #[test]
    fn action_on_coordinates_matches_action_on_forms() {
        let b = slice_basis(2).unwrap();
        let flat: Vec<Rational> = (0..12).map(|k| int(k * k - 3 * k + 1)).collect();
        let c = SliceCoordinates::from_flat(2, &flat).unwrap();
        let v = assemble(&c).unwrap();
        for g in SignedPermutation::all() {
            let moved = c.act(&g, &b.signature);
            assert_eq!(assemble(&moved).unwrap(), v.act(&g.matrix()).unwrap());
        }
    }

    #[test]
    fn slice_member_with_distinct_diagonal_needs_only_a_permutation() {
        let b = slice_basis(2).unwrap();
        let flat: Vec<Rational> = (0..12).map(|k| int(k % 5 - 2)).collect();
        let mut c = SliceCoordinates::from_flat(2, &flat).unwrap();
        c.alpha[b.quadratic_index - 1] = [int(1), int(4), int(-2)];
        let v = assemble(&c).unwrap();
        let r = rotate_to_slice(&v, 1e-7).unwrap();
        for row in r.eigen.rotation.m {
            let mut a: Vec<f64> = row.iter().map(|x| x.abs()).collect();
            a.sort_by(f64::total_cmp);
            assert!(a[0] < 1e-12 && a[1] < 1e-12 && (a[2] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn repeated_spectrum_is_degenerate() {
        let f1 = form("18x^2 - 27y^2 + 18z^2");
        let v = &TernaryForm::q().mul(&f1) + &form("y^4 - 6 y^2 z^2 + z^4");
        assert!(matches!(
            rotate_to_slice(&v, 1e-7),
            Err(SliceError::Degenerate { .. })
        ));
    }
}
