//! Quartic specifics: the equivariant matrices `E1…E4` and the non-minimal set
//! of 13 rational invariants whose `λ` part restricts to the quadratic invariants.
//!
//! In the quartic slice layout `j = 0` holds the `Vt` coordinates `t = a`, and the
//! remaining triples are `r` (`Vr`, `(0,0)`), `s` (`Vs`, `(1,1)`) and `λ` (the
//! `q·{x², y², z²}` block, `(0,0)`).

use serde::Serialize;

use super::InvariantError;
use crate::harmonic::slice_basis;
use crate::scalar::Scalar;
use crate::slice::SliceCoordinates;

/// Named quartic coordinates `(λ, r, s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticCoordinates<T> {
    pub lambda: [T; 3],
    pub r: [T; 3],
    pub s: [T; 3],
    pub t: [T; 3],
}

/// Splits quartic slice coordinates into `(λ, r, s, t)`.
pub fn quartic_coordinates<T: Scalar>(
    c: &SliceCoordinates<T>,
) -> Result<QuarticCoordinates<T>, InvariantError> {
    if c.half_degree != 2 {
        return Err(InvariantError::Layout(c.half_degree));
    }
    let basis = slice_basis(2)?;
    let find = |sig: (u8, u8)| {
        (1..basis.k_slice)
            .find(|&j| j != basis.quadratic_index && basis.signature.get(j) == sig)
            .expect("quartic layout has one triple per character")
    };
    Ok(QuarticCoordinates {
        lambda: c.triple(basis.quadratic_index).clone(),
        r: c.triple(find((0, 0))).clone(),
        s: c.triple(find((1, 1))).clone(),
        t: c.a.clone(),
    })
}

/// `(x1 − x2)(x2 − x3)(x3 − x1)`.
pub fn bracket<T: Scalar>(x: &[T; 3]) -> T {
    (x[0].clone() - x[1].clone()) * (x[1].clone() - x[2].clone()) * (x[2].clone() - x[0].clone())
}

fn vandermonde<T: Scalar>(x: &[T; 3]) -> [[T; 3]; 3] {
    std::array::from_fn(|i| [T::one(), x[i].clone(), x[i].clone() * x[i].clone()])
}

/// Solves `V y = b` for `V` with rows `(1, x_i, x_i²)`, given `[x] ≠ 0`.
fn solve_rows<T: Scalar>(x: &[T; 3], b: &[T; 3]) -> [T; 3] {
    // y are the coefficients of the interpolating quadratic through (x_i, b_i).
    let mut y: [T; 3] = std::array::from_fn(|_| T::zero());
    for i in 0..3 {
        let (u, w) = (x[(i + 1) % 3].clone(), x[(i + 2) % 3].clone());
        let den = (x[i].clone() - u.clone()) * (x[i].clone() - w.clone());
        let f = b[i].clone() / den;
        y[0] = y[0].clone() + f.clone() * u.clone() * w.clone();
        y[1] = y[1].clone() - f.clone() * (u + w);
        y[2] = y[2].clone() + f;
    }
    y
}

/// The equivariant maps `E1(v)`, `E2(v)`, `E3(v)`, `E4(v)` and the brackets `[λ]`, `[a²]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantMatrices<T> {
    pub e1: [[T; 3]; 3],
    pub e2: [[T; 3]; 3],
    pub e3: [T; 3],
    pub e4: [T; 3],
    pub det_lambda: T,
    pub det_a_sq: T,
}

pub fn equivariant_matrices<T: Scalar>(
    c: &SliceCoordinates<T>,
) -> Result<EquivariantMatrices<T>, InvariantError> {
    let q = quartic_coordinates(c)?;
    let t2: [T; 3] = std::array::from_fn(|i| q.t[i].clone() * q.t[i].clone());
    let det_lambda = bracket(&q.lambda);
    let det_a_sq = bracket(&t2);
    let st: [T; 3] = std::array::from_fn(|i| q.s[i].clone() * q.t[i].clone());
    Ok(EquivariantMatrices {
        e1: vandermonde(&q.lambda),
        e2: vandermonde(&t2),
        e3: st.clone().map(|v| v * det_lambda.clone()),
        e4: st.map(|v| v * det_a_sq.clone()),
        det_lambda,
        det_a_sq,
    })
}

/// The 13 invariants `Ĩλ_{1..3}`, `Ĩr_{1..3}`, `Ĩs_{1..3}`, `Ĩt_{1..3}`, `Ĩt0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuarticAuxInvariants<T = f64> {
    /// Power sums `Σ λ_i^k`, `k = 1, 2, 3`.
    pub lambda: [T; 3],
    /// `E1⁻¹ r`.
    pub r: [T; 3],
    /// `E1⁻¹ (s_i t_i [λ])`.
    pub s: [T; 3],
    /// `E1⁻¹ (t_i²)`.
    pub t: [T; 3],
    /// `t1 t2 t3`.
    pub t0: T,
}

impl<T: Scalar> QuarticAuxInvariants<T> {
    /// Values in the order `λ1..3, r1..3, s1..3, t1..3, t0`.
    pub fn flat(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(13);
        for block in [&self.lambda, &self.r, &self.s, &self.t] {
            out.extend(block.iter().cloned());
        }
        out.push(self.t0.clone());
        out
    }
}

pub fn quartic_aux_invariants<T: Scalar>(
    c: &SliceCoordinates<T>,
) -> Result<QuarticAuxInvariants<T>, InvariantError> {
    let q = quartic_coordinates(c)?;
    let l = &q.lambda;
    let det = bracket(l);
    if det.is_zero() {
        return Err(InvariantError::RepeatedLambda);
    }
    let power = |k: u32| l.iter().fold(T::zero(), |acc, x| acc + x.powi(k));
    let st: [T; 3] = std::array::from_fn(|i| q.s[i].clone() * q.t[i].clone() * det.clone());
    let t2: [T; 3] = std::array::from_fn(|i| q.t[i].clone() * q.t[i].clone());
    Ok(QuarticAuxInvariants {
        lambda: [power(1), power(2), power(3)],
        r: solve_rows(l, &q.r),
        s: solve_rows(l, &st),
        t: solve_rows(l, &t2),
        t0: q.t[0].clone() * q.t[1].clone() * q.t[2].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Rational, SignedPermutation};

    fn with_lambda(l: [i64; 3]) -> SliceCoordinates<Rational> {
        let mut c = SliceCoordinates::<Rational>::zero(2).unwrap();
        let j = slice_basis(2).unwrap().quadratic_index;
        c.alpha[j - 1] = l.map(int);
        c
    }

    #[test]
    fn power_sums_of_lambda() {
        let aux = quartic_aux_invariants(&with_lambda([1, 2, 3])).unwrap();
        assert_eq!(aux.lambda, [int(6), int(14), int(36)]);
        assert!(aux
            .r
            .iter()
            .chain(&aux.s)
            .chain(&aux.t)
            .all(|x| *x == int(0)));
        assert_eq!(aux.t0, int(0));
        assert_eq!(
            quartic_aux_invariants(&with_lambda([1, 1, 2])),
            Err(InvariantError::RepeatedLambda)
        );
    }

    #[test]
    fn determinants() {
        let mut c = with_lambda([1, 2, 3]);
        c.a = [int(1), int(2), int(3)];
        let e = equivariant_matrices(&c).unwrap();
        assert_eq!(e.det_a_sq, int(120));
        assert_eq!(e.det_lambda, int(2));
    }

    #[test]
    fn matrices_are_permutation_equivariant() {
        let basis = slice_basis(2).unwrap();
        let flat: Vec<Rational> = (0..12).map(|k| int((k * 5 % 7) - 3 + k)).collect();
        let c = SliceCoordinates::from_flat(2, &flat).unwrap();
        let e = equivariant_matrices(&c).unwrap();
        for g in SignedPermutation::all() {
            let moved = equivariant_matrices(&c.act(&g, &basis.signature)).unwrap();
            for i in 0..3 {
                let target = g.perm[i];
                assert_eq!(moved.e1[target], e.e1[i]);
                assert_eq!(moved.e2[target], e.e2[i]);
                assert_eq!(moved.e3[target], e.e3[i]);
                assert_eq!(moved.e4[target], e.e4[i]);
            }
            let aux = quartic_aux_invariants(&c).unwrap();
            assert_eq!(
                quartic_aux_invariants(&c.act(&g, &basis.signature)).unwrap(),
                aux
            );
        }
    }
}
