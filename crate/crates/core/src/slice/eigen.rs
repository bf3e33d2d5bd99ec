//! Symmetric 3×3 matrices and their cyclic-Jacobi eigendecomposition.

use serde::Serialize;

use super::SliceError;
use crate::poly::{rat, Matrix3, Rational, TernaryForm};
use crate::scalar::Scalar;

/// Symmetric matrix stored by its six independent entries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetricMatrix3<T = f64> {
    pub a11: T,
    pub a22: T,
    pub a33: T,
    pub a12: T,
    pub a13: T,
    pub a23: T,
}

impl<T: Scalar> SymmetricMatrix3<T> {
    pub fn to_array(&self) -> [[T; 3]; 3] {
        [
            [self.a11.clone(), self.a12.clone(), self.a13.clone()],
            [self.a12.clone(), self.a22.clone(), self.a23.clone()],
            [self.a13.clone(), self.a23.clone(), self.a33.clone()],
        ]
    }

    pub fn to_f64(&self) -> SymmetricMatrix3<f64> {
        SymmetricMatrix3 {
            a11: self.a11.to_f64(),
            a22: self.a22.to_f64(),
            a33: self.a33.to_f64(),
            a12: self.a12.to_f64(),
            a13: self.a13.to_f64(),
            a23: self.a23.to_f64(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        [
            &self.a11, &self.a22, &self.a33, &self.a12, &self.a13, &self.a23,
        ]
        .iter()
        .map(|v| v.to_f64().abs())
        .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.a12.is_zero() && self.a13.is_zero() && self.a23.is_zero()
    }
}

/// The matrix `A` with `v2 = (x y z) A (x y z)ᵀ`.
pub fn quadratic_matrix(v2: &TernaryForm) -> Result<SymmetricMatrix3<Rational>, SliceError> {
    if v2.degree() != 2 {
        return Err(SliceError::WrongDegree {
            found: v2.degree(),
            expected: "2".into(),
        });
    }
    let half = rat(1, 2);
    Ok(SymmetricMatrix3 {
        a11: v2.coeff(2, 0, 0),
        a22: v2.coeff(0, 2, 0),
        a33: v2.coeff(0, 0, 2),
        a12: v2.coeff(1, 1, 0) * &half,
        a13: v2.coeff(1, 0, 1) * &half,
        a23: v2.coeff(0, 1, 1) * &half,
    })
}

/// `g A gᵀ = diag(λ)` with `λ` sorted descending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenDecomposition {
    /// Orthogonal `g`; row `k` is the unit eigenvector of `λ_k`.
    pub rotation: Matrix3<f64>,
    pub eigenvalues: [f64; 3],
    /// `min |λ_i − λ_j|`.
    pub gap: f64,
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Cyclic Jacobi iteration with sweep order `(0,1), (0,2), (1,2)`.
pub fn eigendecompose(a: &SymmetricMatrix3<f64>) -> EigenDecomposition {
    let mut m = a.to_array();
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let scale = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _ in 0..64 {
        let off = PAIRS
            .iter()
            .map(|&(p, q)| 2.0 * m[p][q] * m[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * scale || off == 0.0 {
            break;
        }
        for (p, q) in PAIRS {
            if m[p][q] == 0.0 {
                continue;
            }
            let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // m ← Jᵀ m J and v ← v J with J the plane rotation in (p, q).
            for r in 0..3 {
                let (mrp, mrq) = (m[r][p], m[r][q]);
                m[r][p] = c * mrp - s * mrq;
                m[r][q] = s * mrp + c * mrq;
            }
            for r in 0..3 {
                let (mpr, mqr) = (m[p][r], m[q][r]);
                m[p][r] = c * mpr - s * mqr;
                m[q][r] = s * mpr + c * mqr;
            }
            m[p][q] = 0.0;
            m[q][p] = 0.0;
            for row in v.iter_mut() {
                let (vp, vq) = (row[p], row[q]);
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| m[j][j].total_cmp(&m[i][i]));
    let eigenvalues = order.map(|k| m[k][k]);
    let rotation = Matrix3 {
        m: order.map(|k| [v[0][k], v[1][k], v[2][k]]),
    };
    let gap = PAIRS
        .iter()
        .map(|&(i, j)| (eigenvalues[i] - eigenvalues[j]).abs())
        .fold(f64::INFINITY, f64::min);
    EigenDecomposition {
        rotation,
        eigenvalues,
        gap,
    }
}

impl EigenDecomposition {
    /// `‖g A gᵀ − diag(λ)‖_max`.
    pub fn residual(&self, a: &SymmetricMatrix3<f64>) -> f64 {
        let am = Matrix3 { m: a.to_array() };
        let d = self.rotation.matmul(&am).matmul(&self.rotation.transpose());
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { self.eigenvalues[i] } else { 0.0 };
                worst = worst.max((d.m[i][j] - target).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn quadratic_matrix_halves_cross_terms() {
        let a = quadratic_matrix(&TernaryForm::parse("x*y").unwrap()).unwrap();
        assert_eq!(a.a12, rat(1, 2));
        let f1 = quadratic_matrix(&TernaryForm::parse("18x^2 - 27y^2 + 18z^2").unwrap()).unwrap();
        assert_eq!(
            (f1.a11.clone(), f1.a22.clone(), f1.a33.clone()),
            (int(18), int(-27), int(18))
        );
        assert!(f1.is_diagonal());
        let q = quadratic_matrix(&TernaryForm::q()).unwrap();
        assert_eq!(q.to_array(), Matrix3::<Rational>::identity().m);
        assert!(quadratic_matrix(&TernaryForm::parse("x^4").unwrap()).is_err());
    }

    #[test]
    fn diagonal_and_identity_inputs() {
        let e = eigendecompose(&SymmetricMatrix3 {
            a11: 18.0,
            a22: -27.0,
            a33: 18.0,
            a12: 0.0,
            a13: 0.0,
            a23: 0.0,
        });
        assert_eq!(e.eigenvalues, [18.0, 18.0, -27.0]);
        assert_eq!(e.gap, 0.0);
        let id = eigendecompose(&SymmetricMatrix3 {
            a11: 1.0,
            a22: 1.0,
            a33: 1.0,
            a12: 0.0,
            a13: 0.0,
            a23: 0.0,
        });
        assert_eq!(id.eigenvalues, [1.0; 3]);
        assert_eq!(id.rotation, Matrix3::identity());
    }

    #[test]
    fn rotated_quadratic_recovers_spectrum() {
        let f2 = TernaryForm::parse("13x^2 + 20x*y - 20x*z - 2y^2 + 40y*z - 2z^2").unwrap();
        let a = quadratic_matrix(&f2).unwrap().to_f64();
        let e = eigendecompose(&a);
        for (got, want) in e.eigenvalues.iter().zip([18.0, 18.0, -27.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert!(e.residual(&a) < 1e-9 * (1.0 + a.max_abs()));
        assert!(e.rotation.orthogonality_defect() < 1e-12);
    }
}
