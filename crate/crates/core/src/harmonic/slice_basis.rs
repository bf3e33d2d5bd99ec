//! The equivariant basis `w_{i,j}` (and `w_∞`) of the slice `Λ_{2d}`.
//!
//! Blocks are listed by descending harmonic degree: `q^{d−k'}·H_{2k'}` for
//! `k' = d, d−1, …, 2`, each by ascending spanning-set index, followed by
//! `q^{d−1}·{x², y², z²}`. When `k' ≡ 1 (mod 3)` the dependent `j = 0` triples of
//! `H_{2k'}` and `q·H_{2k'−2}` are merged into the single `(0,0)` triple
//! `q·s + u_{i+1,0} − u_{i+2,0}` with `s` the common value of `u^{(2k'−2)}_{·,0}`,
//! and the remaining members of `q·H_{2k'−2}` follow the `H_{2k'}` block. When
//! `3 | d` the symmetric element `u^{(2d)}_{1,0}` becomes `w_∞`. Finally the first
//! `(ζ,ξ) = (0,1)` triple is moved to `j = 0`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::decompose::coefficient_vector;
use super::spanning::{equivariant_spanning_set, EquivariantSignature};
use super::HarmonicError;
use crate::linalg::{self, RatMatrix};
use crate::poly::{int, rational_to_f64, Rational, TernaryForm};

/// Basis of `Λ_{2d}` with its per-index characters.
#[derive(Debug)]
pub struct SliceBasis {
    pub half_degree: u32,
    pub k_slice: usize,
    /// `elements[j][i]` is `w_{i+1,j}`.
    pub elements: Vec<[TernaryForm; 3]>,
    pub w_infinity: Option<TernaryForm>,
    pub signature: EquivariantSignature,
    /// Index `j` of the `q^{d−1}·{x², y², z²}` triple.
    pub quadratic_index: usize,
    inverse: OnceLock<(RatMatrix, Vec<Vec<f64>>)>,
}

impl SliceBasis {
    /// `3·k_slice + [3 | d]`, the dimension of `Λ_{2d}`.
    pub fn dimension(&self) -> usize {
        3 * self.k_slice + self.w_infinity.is_some() as usize
    }

    /// The basis in flat order `w_{i,j}` at `3j + i`, then `w_∞`.
    pub fn flat(&self) -> Vec<TernaryForm> {
        let mut out: Vec<TernaryForm> = self
            .elements
            .iter()
            .flat_map(|t| t.iter().cloned())
            .collect();
        out.extend(self.w_infinity.iter().cloned());
        out
    }

    /// The flat basis completed to `V_{2d}` by `q^{d−1}·{xy, yz, zx}`.
    pub fn completed(&self) -> Vec<TernaryForm> {
        let d = self.half_degree;
        let qp = TernaryForm::q_power(d - 1);
        let mut out = self.flat();
        for e in [[1, 1, 0], [0, 1, 1], [1, 0, 1]] {
            out.push(qp.mul(&TernaryForm::monomial(e[0], e[1], e[2], int(1))));
        }
        out
    }

    fn inverses(&self) -> &(RatMatrix, Vec<Vec<f64>>) {
        self.inverse.get_or_init(|| {
            let cols: Vec<Vec<Rational>> =
                self.completed().iter().map(coefficient_vector).collect();
            let n = cols.len();
            let m: RatMatrix = (0..n)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            let inv = linalg::inverse(&m).expect("completed slice basis spans V_2d");
            let inv_f = inv
                .iter()
                .map(|row| row.iter().map(rational_to_f64).collect())
                .collect();
            (inv, inv_f)
        })
    }

    /// Exact inverse of the completed basis matrix: maps dense monomial
    /// coefficients to coordinates in [`SliceBasis::completed`].
    pub fn inverse_exact(&self) -> &RatMatrix {
        &self.inverses().0
    }

    /// The same inverse rounded to doubles.
    pub fn inverse_f64(&self) -> &[Vec<f64>] {
        &self.inverses().1
    }

    /// `Σ c_k w_k` over the flat basis.
    pub fn combine(&self, coords: &[Rational]) -> TernaryForm {
        let mut out = TernaryForm::zero(2 * self.half_degree);
        for (c, w) in coords.iter().zip(self.flat()) {
            out = &out + &w.scale(c);
        }
        out
    }
}

/// `⌊(d+1)(2d+1)/3⌋ − 1`.
pub fn k_slice_for(d: u32) -> usize {
    ((d + 1) * (2 * d + 1) / 3 - 1) as usize
}

fn times(qp: &TernaryForm, t: &[TernaryForm; 3]) -> [TernaryForm; 3] {
    [qp.mul(&t[0]), qp.mul(&t[1]), qp.mul(&t[2])]
}

/// Builds the slice basis of `Λ_{2d}` for `d ≥ 1`.
pub fn build_slice_basis(d: u32) -> Result<SliceBasis, HarmonicError> {
    if d < 1 {
        return Err(HarmonicError::OutOfRange("slice bases need d ≥ 1".into()));
    }
    let mut blocks: Vec<([TernaryForm; 3], (u8, u8))> = Vec::new();
    let mut w_infinity = None;
    let q = TernaryForm::q();
    for kp in (2..=d).rev() {
        let qp = TernaryForm::q_power(d - kp);
        let s = equivariant_spanning_set(kp)?;
        let rest = |set: &super::EquivariantSpanningSet, extra: &TernaryForm, out: &mut Vec<_>| {
            for j in 1..set.elements.len() {
                out.push((times(extra, &set.elements[j]), set.signature.get(j)));
            }
        };
        match kp % 3 {
            2 => {
                for (j, t) in s.elements.iter().enumerate() {
                    blocks.push((times(&qp, t), s.signature.get(j)));
                }
            }
            0 => {
                if kp == d {
                    rest(&s, &qp, &mut blocks);
                    w_infinity = Some(s.elements[0][0].clone());
                }
            }
            _ => {
                let t = equivariant_spanning_set(kp - 1)?;
                let sym = q.mul(&t.elements[0][0]);
                let u = &s.elements[0];
                let merged: [TernaryForm; 3] =
                    std::array::from_fn(|i| &(&sym + &u[(i + 1) % 3]) - &u[(i + 2) % 3]);
                blocks.push((times(&qp, &merged), (0, 0)));
                rest(&s, &qp, &mut blocks);
                rest(&t, &qp.mul(&q), &mut blocks);
            }
        }
    }
    let qp = TernaryForm::q_power(d - 1);
    let squares = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
        .map(|e| qp.mul(&TernaryForm::monomial(e[0], e[1], e[2], int(1))));
    blocks.push((squares, (0, 0)));
    if let Some(pos) = blocks.iter().position(|(_, sig)| *sig == (0, 1)) {
        let b = blocks.remove(pos);
        blocks.insert(0, b);
    }
    let quadratic_index = blocks.len() - 1;
    let signature = EquivariantSignature {
        zeta: blocks.iter().map(|(_, s)| s.0).collect(),
        xi: blocks.iter().map(|(_, s)| s.1).collect(),
    };
    let elements: Vec<[TernaryForm; 3]> = blocks.into_iter().map(|(t, _)| t).collect();
    debug_assert_eq!(elements.len(), k_slice_for(d));
    Ok(SliceBasis {
        half_degree: d,
        k_slice: elements.len(),
        elements,
        w_infinity,
        signature,
        quadratic_index,
        inverse: OnceLock::new(),
    })
}

/// Cached slice basis of `Λ_{2d}`.
pub fn slice_basis(d: u32) -> Result<Arc<SliceBasis>, HarmonicError> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<SliceBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("slice-basis cache poisoned").get(&d) {
        return Ok(b.clone());
    }
    let b = Arc::new(build_slice_basis(d)?);
    Ok(cache
        .lock()
        .expect("slice-basis cache poisoned")
        .entry(d)
        .or_insert(b)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::decompose::harmonic_decompose;
    use crate::harmonic::spanning::check_equivariance;
    use crate::poly::SignedPermutation;
    use num_traits::Zero;

    #[test]
    fn counts_match_slice_dimension() {
        for d in 1..=6u32 {
            let b = build_slice_basis(d).unwrap();
            assert_eq!(b.k_slice, k_slice_for(d), "d = {d}");
            let dim_v = ((2 * d + 1) * (2 * d + 2) / 2) as usize;
            assert_eq!(b.dimension(), dim_v - 3);
            assert_eq!(b.w_infinity.is_some(), d % 3 == 0);
            assert_eq!(
                linalg::rank(&b.flat().iter().map(coefficient_vector).collect::<Vec<_>>()),
                b.dimension()
            );
        }
    }

    #[test]
    fn quartic_layout() {
        let b = build_slice_basis(2).unwrap();
        assert_eq!(b.signature.zeta, vec![0, 0, 1, 0]);
        assert_eq!(b.signature.xi, vec![1, 0, 1, 0]);
        assert_eq!(b.quadratic_index, 3);
        assert_eq!(
            b.elements[3][0],
            TernaryForm::parse("x^4 + x^2 y^2 + x^2 z^2").unwrap()
        );
    }

    #[test]
    fn first_index_is_zero_one_block() {
        for d in 2..=7 {
            let b = build_slice_basis(d).unwrap();
            assert_eq!(b.signature.get(0), (0, 1), "d = {d}");
        }
    }

    #[test]
    fn elements_lie_in_slice_and_are_equivariant() {
        for d in 2..=4 {
            let b = build_slice_basis(d).unwrap();
            for w in b.flat() {
                let h = harmonic_decompose(&w).unwrap();
                let v2 = &h.quadratic_part;
                assert!(
                    v2.coeff(1, 1, 0).is_zero()
                        && v2.coeff(0, 1, 1).is_zero()
                        && v2.coeff(1, 0, 1).is_zero()
                );
            }
            for g in SignedPermutation::all() {
                assert!(check_equivariance(&b.elements, &b.signature, &g), "d = {d}");
                if let Some(w) = &b.w_infinity {
                    assert_eq!(&w.act_unchecked(&g.matrix()), w);
                }
            }
        }
    }

    #[test]
    fn inverse_recovers_coordinates() {
        let b = build_slice_basis(2).unwrap();
        let coords: Vec<Rational> = (0..12).map(|k| int(k as i64 - 5)).collect();
        let v = b.combine(&coords);
        let got = linalg::mat_vec(b.inverse_exact(), &coefficient_vector(&v));
        assert_eq!(&got[..12], &coords[..]);
        assert!(got[12..].iter().all(|c| c == &int(0)));
    }
}
