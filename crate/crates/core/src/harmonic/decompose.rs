//! Harmonic decomposition `v = Σ q^{d−k} h_{2k} + q^{d−1} v′`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use super::spanning::equivariant_spanning_set;
use super::HarmonicError;
use crate::linalg::{self, RatMatrix};
use crate::poly::{
    int, monomial_exponents, monomial_index, rational_to_f64, NumericForm, Rational, TernaryForm,
};

/// Dense coefficient vector in graded-lex monomial order.
pub fn coefficient_vector(v: &TernaryForm) -> Vec<Rational> {
    let n = v.degree();
    let mut out = vec![Rational::zero(); monomial_exponents(n).len()];
    for (e, c) in v.terms() {
        out[monomial_index(n, e.i, e.j)] = c.clone();
    }
    out
}

/// The six quadratic monomials `x², y², z², xy, yz, zx`.
const QUADRATIC: [[u32; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [0, 1, 1],
    [1, 0, 1],
];

/// Components of the harmonic decomposition of a form of degree `2d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicComponents {
    pub half_degree: u32,
    /// `h_{2d}, h_{2d−2}, …, h_4`.
    pub harmonics: Vec<TernaryForm>,
    /// `v′`, of degree 2.
    pub quadratic_part: TernaryForm,
}

impl HarmonicComponents {
    /// `Σ q^{d−k} h_{2k} + q^{d−1} v′`.
    pub fn reassemble(&self) -> TernaryForm {
        let d = self.half_degree;
        let mut out = TernaryForm::q_power(d - 1).mul(&self.quadratic_part);
        for (n, h) in self.harmonics.iter().enumerate() {
            out = &out + &TernaryForm::q_power(n as u32).mul(h);
        }
        out
    }
}

struct Decomposition {
    /// Independent harmonic bases of `H_{2k}` for `k = d, …, 2`.
    blocks: Vec<Vec<TernaryForm>>,
    inverse: RatMatrix,
    quadratic_rows_f64: Vec<Vec<f64>>,
}

fn build(d: u32) -> Result<Decomposition, HarmonicError> {
    let mut blocks = Vec::new();
    let mut columns = Vec::new();
    for kp in (2..=d).rev() {
        let basis = equivariant_spanning_set(kp)?.independent();
        let qp = TernaryForm::q_power(d - kp);
        columns.extend(basis.iter().map(|h| coefficient_vector(&qp.mul(h))));
        blocks.push(basis);
    }
    let qp = TernaryForm::q_power(d - 1);
    for e in QUADRATIC {
        columns.push(coefficient_vector(&qp.mul(&TernaryForm::monomial(
            e[0],
            e[1],
            e[2],
            int(1),
        ))));
    }
    let n = columns.len();
    let m: RatMatrix = (0..n)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let inverse = linalg::inverse(&m).ok_or_else(|| {
        HarmonicError::Mismatch(format!(
            "harmonic base change of degree {} is singular",
            2 * d
        ))
    })?;
    let quadratic_rows_f64 = inverse[n - 6..]
        .iter()
        .map(|row| row.iter().map(rational_to_f64).collect())
        .collect();
    Ok(Decomposition {
        blocks,
        inverse,
        quadratic_rows_f64,
    })
}

fn decomposition(d: u32) -> Result<Arc<Decomposition>, HarmonicError> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Decomposition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("decomposition cache poisoned").get(&d) {
        return Ok(s.clone());
    }
    let s = Arc::new(build(d)?);
    Ok(cache
        .lock()
        .expect("decomposition cache poisoned")
        .entry(d)
        .or_insert(s)
        .clone())
}

fn half_degree(degree: u32) -> Result<u32, HarmonicError> {
    if degree < 2 || degree % 2 == 1 {
        return Err(HarmonicError::OutOfRange(format!(
            "harmonic decomposition needs an even degree ≥ 2, got {degree}"
        )));
    }
    Ok(degree / 2)
}

fn quadratic_from(coords: impl Iterator<Item = Rational>) -> TernaryForm {
    let terms = QUADRATIC.iter().zip(coords).map(|(e, c)| (*e, c));
    TernaryForm::from_terms(2, terms).expect("quadratic exponents")
}

/// Exact harmonic decomposition of an even-degree form.
pub fn harmonic_decompose(v: &TernaryForm) -> Result<HarmonicComponents, HarmonicError> {
    let d = half_degree(v.degree())?;
    let dec = decomposition(d)?;
    let coords = linalg::mat_vec(&dec.inverse, &coefficient_vector(v));
    let mut harmonics = Vec::with_capacity(dec.blocks.len());
    let mut offset = 0;
    for (n, block) in dec.blocks.iter().enumerate() {
        let mut h = TernaryForm::zero(2 * (d - n as u32));
        for (u, c) in block.iter().zip(&coords[offset..]) {
            if !c.is_zero() {
                h = &h + &u.scale(c);
            }
        }
        offset += block.len();
        harmonics.push(h);
    }
    Ok(HarmonicComponents {
        half_degree: d,
        harmonics,
        quadratic_part: quadratic_from(coords[offset..].iter().cloned()),
    })
}

/// Exact quadratic part `v′` alone.
pub fn quadratic_part(v: &TernaryForm) -> Result<TernaryForm, HarmonicError> {
    let d = half_degree(v.degree())?;
    let dec = decomposition(d)?;
    let n = dec.inverse.len();
    let coords = linalg::mat_vec(&dec.inverse[n - 6..].to_vec(), &coefficient_vector(v));
    Ok(quadratic_from(coords.into_iter()))
}

/// Double-precision quadratic part `v′` of a numeric form.
pub fn quadratic_part_numeric(v: &NumericForm) -> Result<NumericForm, HarmonicError> {
    let d = half_degree(v.degree)?;
    let dec = decomposition(d)?;
    let mut out = NumericForm::zero(2);
    for (e, row) in QUADRATIC.iter().zip(&dec.quadratic_rows_f64) {
        out.coeffs[monomial_index(2, e[0], e[1])] =
            row.iter().zip(&v.coeffs).map(|(a, b)| a * b).sum();
    }
    Ok(out)
}
