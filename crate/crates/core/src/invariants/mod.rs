//! Generating rational invariants: evaluation on the slice, the full
//! evaluation pipeline, equivalence decisions and reconstruction.

mod quartic;
mod reconstruct;

pub use quartic::{
    bracket, equivariant_matrices, quartic_aux_invariants, quartic_coordinates,
    EquivariantMatrices, QuarticAuxInvariants, QuarticCoordinates,
};
pub use reconstruct::{reconstruct, reconstruct_coordinates, solve_cubic, CubicRoots};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::harmonic::{slice_basis, EquivariantSignature, HarmonicError};
use crate::poly::{rat, NumericForm, PolyError, Rational, TernaryForm};
use crate::rel_close;
use crate::scalar::Scalar;
use crate::slice::{self, quadratic_matrix, SliceCoordinates, SliceError};

/// Errors of invariant evaluation and reconstruction.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum InvariantError {
    #[error("rational invariants are undefined at v: eigenvalue gap {gap:e} does not exceed {threshold:e}")]
    Degenerate { gap: f64, threshold: f64 },
    #[error("values allow no unambiguous reconstruction: {0}")]
    NoUnambiguousReconstruction(String),
    #[error("λ-coordinates are not pairwise distinct")]
    RepeatedLambda,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("invariant vector does not match the layout of half degree {0}")]
    Layout(u32),
    #[error(transparent)]
    Slice(SliceError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<SliceError> for InvariantError {
    fn from(e: SliceError) -> Self {
        match e {
            SliceError::Degenerate { gap, threshold } => {
                InvariantError::Degenerate { gap, threshold }
            }
            SliceError::Harmonic(h) => InvariantError::Harmonic(h),
            other => InvariantError::Slice(other),
        }
    }
}

/// Values `p_{i,0}`, `p_{i,j}` and `p_∞` of the generating invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantVector<T = f64> {
    pub half_degree: u32,
    /// `(Σ a_i², a1 a2 a3, Σ a_i⁴)`.
    pub p0: [T; 3],
    /// `p[j − 1][i]` is `p_{i+1,j}` for `1 ≤ j < k_slice`.
    pub p: Vec<[T; 3]>,
    pub p_infinity: Option<T>,
}

impl<T: Scalar> InvariantVector<T> {
    /// Number of generators, `2d² + 3d − 2`.
    pub fn len(&self) -> usize {
        3 + 3 * self.p.len() + self.p_infinity.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All values in the order `p0`, `p_{·,1}`, …, `p_∞`.
    pub fn flat(&self) -> Vec<T> {
        let mut out = self.p0.to_vec();
        for t in &self.p {
            out.extend(t.iter().cloned());
        }
        out.extend(self.p_infinity.iter().cloned());
        out
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> InvariantVector<U> {
        InvariantVector {
            half_degree: self.half_degree,
            p0: std::array::from_fn(|i| f(&self.p0[i])),
            p: self
                .p
                .iter()
                .map(|t| std::array::from_fn(|i| f(&t[i])))
                .collect(),
            p_infinity: self.p_infinity.as_ref().map(&f),
        }
    }

    pub fn to_f64(&self) -> InvariantVector<f64> {
        self.map(|x| x.to_f64())
    }
}

/// `2d² + 3d − 2`.
pub fn generator_count(d: u32) -> usize {
    (2 * d * d + 3 * d - 2) as usize
}

#[derive(Serialize, Deserialize)]
struct InvariantJson {
    d: u32,
    p0: [f64; 3],
    p: [Vec<f64>; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p_inf: Option<f64>,
    ordering: EquivariantSignature,
}

impl Serialize for InvariantVector<f64> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sig = slice_basis(self.half_degree)
            .map_err(serde::ser::Error::custom)?
            .signature
            .clone();
        InvariantJson {
            d: self.half_degree,
            p0: self.p0,
            p: std::array::from_fn(|i| self.p.iter().map(|t| t[i]).collect()),
            p_inf: self.p_infinity,
            ordering: sig,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvariantVector<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = InvariantJson::deserialize(d)?;
        let basis = slice_basis(raw.d).map_err(de::Error::custom)?;
        if raw.ordering != basis.signature {
            return Err(de::Error::custom(
                "ordering does not match this library's slice labeling",
            ));
        }
        let k = basis.k_slice - 1;
        if raw.p.iter().any(|row| row.len() != k) {
            return Err(de::Error::custom(format!(
                "each row of p must have {k} entries"
            )));
        }
        if raw.p_inf.is_some() != basis.w_infinity.is_some() {
            return Err(de::Error::custom(
                "p_inf must be present exactly when 3 divides d",
            ));
        }
        Ok(InvariantVector {
            half_degree: raw.d,
            p0: raw.p0,
            p: (0..k)
                .map(|j| std::array::from_fn(|i| raw.p[i][j]))
                .collect(),
            p_infinity: raw.p_inf,
        })
    }
}

/// `(a1² − a2²)(a2² − a3²)(a3² − a1²)`.
pub fn delta<T: Scalar>(a: &[T; 3]) -> T {
    let s: [T; 3] = std::array::from_fn(|i| a[i].clone() * a[i].clone());
    (s[0].clone() - s[1].clone()) * (s[1].clone() - s[2].clone()) * (s[2].clone() - s[0].clone())
}

/// The generators at slice coordinates:
/// `p_{1,0} = Σ a_i²`, `p_{2,0} = a1 a2 a3`, `p_{3,0} = Σ a_i⁴`,
/// `p_{·,j} = V·M_{·,j}` with `V` the rows `(1)`, `(a_i²)`, `(a_i⁴)` and
/// `M_{i,j} = a_i^{ξ(j)} δ^{ζ(j)} α_{i,j}`, and `p_∞ = α_∞`.
pub fn slice_invariants<T: Scalar>(
    c: &SliceCoordinates<T>,
) -> Result<InvariantVector<T>, InvariantError> {
    let basis = slice_basis(c.half_degree)?;
    if c.k_slice() != basis.k_slice || c.alpha_infinity.is_some() != basis.w_infinity.is_some() {
        return Err(InvariantError::Layout(c.half_degree));
    }
    let a = &c.a;
    let sq: [T; 3] = std::array::from_fn(|i| a[i].clone() * a[i].clone());
    let qu: [T; 3] = std::array::from_fn(|i| sq[i].clone() * sq[i].clone());
    let sum = |v: &[T; 3]| v[0].clone() + v[1].clone() + v[2].clone();
    let p0 = [
        sum(&sq),
        a[0].clone() * a[1].clone() * a[2].clone(),
        sum(&qu),
    ];
    let dl = delta(a);
    let p = c
        .alpha
        .iter()
        .enumerate()
        .map(|(jm1, alpha)| {
            let (zeta, xi) = basis.signature.get(jm1 + 1);
            let m: [T; 3] = std::array::from_fn(|i| {
                let mut v = alpha[i].clone();
                if xi == 1 {
                    v = v * a[i].clone();
                }
                if zeta == 1 {
                    v = v * dl.clone();
                }
                v
            });
            [
                sum(&m),
                sq[0].clone() * m[0].clone()
                    + sq[1].clone() * m[1].clone()
                    + sq[2].clone() * m[2].clone(),
                qu[0].clone() * m[0].clone()
                    + qu[1].clone() * m[1].clone()
                    + qu[2].clone() * m[2].clone(),
            ]
        })
        .collect();
    Ok(InvariantVector {
        half_degree: c.half_degree,
        p0,
        p,
        p_infinity: c.alpha_infinity.clone(),
    })
}

/// Evaluation of the generators on an arbitrary form: rotate into the slice,
/// then evaluate on the slice coordinates.
pub fn evaluate_invariants(
    v: &TernaryForm,
    tol: f64,
) -> Result<InvariantVector<f64>, InvariantError> {
    let r = slice::rotate_to_slice(v, tol)?;
    slice_invariants(&r.coordinates)
}

/// [`evaluate_invariants`] for a form with double-precision coefficients.
pub fn evaluate_invariants_numeric(
    v: &NumericForm,
    tol: f64,
) -> Result<InvariantVector<f64>, InvariantError> {
    let r = slice::rotate_to_slice_numeric(v, tol)?;
    slice_invariants(&r.coordinates)
}

/// The invariants `e1, e2, e3` of a quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticInvariants {
    #[serde(with = "crate::poly::rational_string")]
    pub e1: Rational,
    #[serde(with = "crate::poly::rational_string")]
    pub e2: Rational,
    #[serde(with = "crate::poly::rational_string")]
    pub e3: Rational,
}

/// `e1 = tr A`, `e2 = 4·(sum of principal 2-minors of A)`, `e3 = 4 det A`, in the
/// coefficients `a_{ijk}` of the quadratic form.
pub fn quad_invariants(v2: &TernaryForm) -> Result<QuadraticInvariants, InvariantError> {
    let a = quadratic_matrix(v2)?;
    let four = rat(4, 1);
    let (a11, a22, a33) = (&a.a11, &a.a22, &a.a33);
    let (a12, a13, a23) = (&a.a12, &a.a13, &a.a23);
    let minors = a11 * a22 + a22 * a33 + a11 * a33 - a12 * a12 - a13 * a13 - a23 * a23;
    let det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13)
        + a13 * (a12 * a23 - a22 * a13);
    Ok(QuadraticInvariants {
        e1: a11 + a22 + a33,
        e2: &four * minors,
        e3: &four * det,
    })
}

/// Outcome of an orthogonal-equivalence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent,
    Distinct,
    Undecided,
}

/// Compares two invariant vectors: all entries within `tol` gives
/// [`Equivalence::Equivalent`], some entry beyond `10·tol` gives
/// [`Equivalence::Distinct`], anything else is [`Equivalence::Undecided`].
pub fn compare_invariants(
    x: &InvariantVector<f64>,
    y: &InvariantVector<f64>,
    tol: f64,
) -> Equivalence {
    let (fx, fy) = (x.flat(), y.flat());
    if fx.len() != fy.len() {
        return Equivalence::Distinct;
    }
    if fx.iter().zip(&fy).all(|(a, b)| rel_close(*a, *b, tol)) {
        Equivalence::Equivalent
    } else if fx
        .iter()
        .zip(&fy)
        .any(|(a, b)| !rel_close(*a, *b, 10.0 * tol))
    {
        Equivalence::Distinct
    } else {
        Equivalence::Undecided
    }
}

/// Decides whether `w = g·v` for some orthogonal `g`. Quadratic forms are
/// compared exactly through `e1, e2, e3`; higher degrees through the generators,
/// with a degenerate input giving [`Equivalence::Undecided`].
pub fn equivalent(
    v: &TernaryForm,
    w: &TernaryForm,
    tol: f64,
) -> Result<Equivalence, InvariantError> {
    if v.degree() != w.degree() {
        return Err(InvariantError::DegreeMismatch(v.degree(), w.degree()));
    }
    if v.degree() == 2 {
        let same = quad_invariants(v)? == quad_invariants(w)?;
        return Ok(if same {
            Equivalence::Equivalent
        } else {
            Equivalence::Distinct
        });
    }
    let eval = |f: &TernaryForm| match evaluate_invariants(f, tol) {
        Ok(x) => Ok(Some(x)),
        Err(InvariantError::Degenerate { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    match (eval(v)?, eval(w)?) {
        (Some(x), Some(y)) => Ok(compare_invariants(&x, &y, tol)),
        _ => Ok(Equivalence::Undecided),
    }
}
