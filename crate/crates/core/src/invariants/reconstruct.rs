//! Reconstruction of a slice form from prescribed generator values.

use std::f64::consts::PI;

use super::{delta, InvariantError, InvariantVector};
use crate::harmonic::slice_basis;
use crate::poly::TernaryForm;
use crate::slice::{assemble_f64, SliceCoordinates};

/// Real roots of `T³ − a T² + b T − c` with three distinct positive roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicRoots {
    /// Roots sorted descending.
    pub roots: [f64; 3],
    /// `a²b² − 4b³ − 4a³c − 27c² + 18abc`.
    pub discriminant: f64,
}

/// Solves `T³ − a T² + b T − c = 0` by the trigonometric three-real-root formula
/// with one Newton step per root. Requires `a, b, c > 0` and a discriminant
/// exceeding `1e−12` relative to the size of its terms.
pub fn solve_cubic(a: f64, b: f64, c: f64) -> Result<CubicRoots, InvariantError> {
    let terms = [
        a * a * b * b,
        -4.0 * b * b * b,
        -4.0 * a * a * a * c,
        -27.0 * c * c,
        18.0 * a * b * c,
    ];
    let discriminant: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(InvariantError::NoUnambiguousReconstruction(format!(
            "cubic coefficients must be positive, got a = {a}, b = {b}, c = {c}"
        )));
    }
    if discriminant.partial_cmp(&(1e-12 * scale)) != Some(std::cmp::Ordering::Greater) {
        return Err(InvariantError::NoUnambiguousReconstruction(format!(
            "cubic discriminant {discriminant:e} is not positive"
        )));
    }
    // T = s + a/3 gives s³ + p s + q with p < 0 in the three-real-root case.
    let p = b - a * a / 3.0;
    let q = -2.0 * a * a * a / 27.0 + a * b / 3.0 - c;
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    let phi = arg.acos() / 3.0;
    let mut roots: [f64; 3] =
        std::array::from_fn(|k| m * (phi - 2.0 * PI * k as f64 / 3.0).cos() + a / 3.0);
    for r in roots.iter_mut() {
        let f = ((*r - a) * *r + b) * *r - c;
        let df = (3.0 * *r - 2.0 * a) * *r + b;
        if df != 0.0 {
            *r -= f / df;
        }
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    Ok(CubicRoots {
        roots,
        discriminant,
    })
}

/// Solves `V x = y` for `V` with rows `(1,1,1)`, `(r_i)`, `(r_i²)`.
fn solve_vandermonde(r: &[f64; 3], y: &[f64; 3]) -> [f64; 3] {
    // x_c = Σ_k (Lagrange basis polynomial of node c)_k · y_k.
    std::array::from_fn(|c| {
        let (u, w) = (r[(c + 1) % 3], r[(c + 2) % 3]);
        let den = (r[c] - u) * (r[c] - w);
        (u * w * y[0] - (u + w) * y[1] + y[2]) / den
    })
}

/// Slice coordinates with the prescribed generator values.
pub fn reconstruct_coordinates(
    mu: &InvariantVector<f64>,
) -> Result<SliceCoordinates<f64>, InvariantError> {
    let d = mu.half_degree;
    let basis = slice_basis(d)?;
    if mu.p.len() + 1 != basis.k_slice || mu.p_infinity.is_some() != basis.w_infinity.is_some() {
        return Err(InvariantError::Layout(d));
    }
    let [m10, m20, m30] = mu.p0;
    let cubic = solve_cubic(m10, (m10 * m10 - m30) / 2.0, m20 * m20)?;
    let mut a = cubic.roots.map(f64::sqrt);
    if m20 < 0.0 {
        a[0] = -a[0];
    }
    let dl = delta(&a);
    let alpha =
        mu.p.iter()
            .enumerate()
            .map(|(jm1, col)| {
                let (zeta, xi) = basis.signature.get(jm1 + 1);
                let m = solve_vandermonde(&cubic.roots, col);
                std::array::from_fn(|i| {
                    let mut v = m[i];
                    if xi == 1 {
                        v /= a[i];
                    }
                    if zeta == 1 {
                        v /= dl;
                    }
                    v
                })
            })
            .collect();
    Ok(SliceCoordinates {
        half_degree: d,
        a,
        alpha,
        alpha_infinity: mu.p_infinity,
    })
}

/// A form in `Λ_{2d}` whose generators take the values `mu`.
pub fn reconstruct(mu: &InvariantVector<f64>) -> Result<TernaryForm, InvariantError> {
    Ok(assemble_f64(&reconstruct_coordinates(mu)?)?)
}
