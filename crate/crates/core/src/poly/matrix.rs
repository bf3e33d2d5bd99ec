//! 3×3 matrices and the signed permutation group B3.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{int, Rational};

/// 3×3 matrix; `Matrix3<Rational>` is the exact variant, `Matrix3<f64>` the numeric one.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix3<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>> Matrix3<T> {
    pub fn new(m: [[T; 3]; 3]) -> Self {
        Matrix3 { m }
    }

    pub fn identity() -> Self {
        Matrix3::diagonal([T::one(), T::one(), T::one()])
    }

    pub fn diagonal(d: [T; 3]) -> Self {
        let mut m: [[T; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
        for (i, v) in d.into_iter().enumerate() {
            m[i][i] = v;
        }
        Matrix3 { m }
    }

    pub fn transpose(&self) -> Self {
        Matrix3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        Matrix3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).fold(T::zero(), |acc, k| {
                        acc + self.m[i][k].clone() * rhs.m[k][j].clone()
                    })
                })
            }),
        }
    }
}

impl Matrix3<Rational> {
    /// Exact test of `gᵀ g = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().matmul(self) == Matrix3::identity()
    }

    pub fn to_f64(&self) -> Matrix3<f64> {
        Matrix3 {
            m: self
                .m
                .clone()
                .map(|row| row.map(|v| super::rational_to_f64(&v))),
        }
    }
}

impl Matrix3<f64> {
    /// `‖gᵀ g − I‖_max`.
    pub fn orthogonality_defect(&self) -> f64 {
        let p = self.transpose().matmul(self);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.m[i][j] - target).abs());
            }
        }
        worst
    }
}

impl<T: serde::Serialize> serde::Serialize for Matrix3<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

/// Element `g = g_τ g_σ` of B3, where `(g_σ α)_i = α_{σ⁻¹(i)}` and `g_τ = diag(τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    /// `perm[i] = σ(i)` on indices `0..3`.
    pub perm: [usize; 3],
    /// `signs[i] = τ_i ∈ {±1}`.
    pub signs: [i8; 3],
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
];

impl SignedPermutation {
    pub fn identity() -> Self {
        SignedPermutation {
            perm: [0, 1, 2],
            signs: [1, 1, 1],
        }
    }

    pub fn permutation(perm: [usize; 3]) -> Self {
        SignedPermutation {
            perm,
            signs: [1, 1, 1],
        }
    }

    pub fn sign_change(signs: [i8; 3]) -> Self {
        SignedPermutation {
            perm: [0, 1, 2],
            signs,
        }
    }

    /// The cyclic permutation `x → y → z → x` of the variables, `g_c`.
    pub fn cyclic() -> Self {
        SignedPermutation::permutation([1, 2, 0])
    }

    /// All 48 elements.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for bits in 0..8u8 {
                let signs = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
                out.push(SignedPermutation { perm, signs });
            }
        }
        out
    }

    /// Sign of σ.
    pub fn sign(&self) -> i8 {
        let p = self.perm;
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `τ1 τ2 τ3`.
    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    /// The matrix `g_τ g_σ`, with entry `(σ(j), j)` equal to `τ_{σ(j)}`.
    pub fn matrix(&self) -> Matrix3<Rational> {
        let mut m: [[Rational; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| int(0)));
        for j in 0..3 {
            let i = self.perm[j];
            m[i][j] = int(self.signs[i] as i64);
        }
        Matrix3 { m }
    }

    pub fn matrix_f64(&self) -> Matrix3<f64> {
        self.matrix().to_f64()
    }

    /// Group product `self · rhs`.
    pub fn compose(&self, rhs: &SignedPermutation) -> SignedPermutation {
        // g_τ g_σ g_τ' g_σ' = g_τ (g_σ g_τ' g_σ⁻¹) g_σ g_σ', and g_σ diag(τ') g_σ⁻¹ = diag(τ'∘σ⁻¹).
        let mut inv = [0usize; 3];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let signs = std::array::from_fn(|i| self.signs[i] * rhs.signs[inv[i]]);
        let perm = std::array::from_fn(|i| self.perm[rhs.perm[i]]);
        SignedPermutation { perm, signs }
    }

    /// Image of a `(ζ, ξ)`-equivariant triple member: `g u_i = sign · u_target`.
    pub fn equivariant_image(&self, i: usize, zeta: u8, xi: u8) -> (usize, i8) {
        let target = self.perm[i];
        let mut s = 1i8;
        if zeta == 1 {
            s *= self.sign();
        }
        if xi == 1 {
            s *= self.sign_product() * self.signs[target];
        }
        (target, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TernaryForm;

    #[test]
    fn group_has_48_distinct_orthogonal_elements() {
        let all = SignedPermutation::all();
        assert_eq!(all.len(), 48);
        let mats: std::collections::HashSet<String> =
            all.iter().map(|g| format!("{:?}", g.matrix())).collect();
        assert_eq!(mats.len(), 48);
        assert!(all.iter().all(|g| g.matrix().is_orthogonal()));
    }

    #[test]
    fn cyclic_matrix_layout() {
        let g = SignedPermutation::cyclic().matrix();
        let expected = [[0, 0, 1], [1, 0, 0], [0, 1, 0]].map(|r| r.map(int));
        assert_eq!(g.m, expected);
        let v = TernaryForm::parse("y^4 - 6*y^2*z^2 + z^4").unwrap();
        assert_eq!(
            v.act(&g).unwrap(),
            TernaryForm::parse("z^4 - 6*z^2*x^2 + x^4").unwrap()
        );
    }

    #[test]
    fn compose_matches_matrix_product() {
        let all = SignedPermutation::all();
        for a in &all {
            for b in &all {
                assert_eq!(a.compose(b).matrix(), a.matrix().matmul(&b.matrix()));
            }
        }
    }

    #[test]
    fn action_composition_over_b3() {
        let v = TernaryForm::parse("x^3*y + 2*y^2*z^2 - 3*x*y*z^2 + 5*z^4").unwrap();
        let all = SignedPermutation::all();
        for a in &all {
            for b in &all {
                let lhs = v.act(&b.matrix()).unwrap().act(&a.matrix()).unwrap();
                let rhs = v.act(&a.compose(b).matrix()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
