//! Dense double-precision forms used at the numeric boundary.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::Matrix3;

/// Homogeneous form with dense `f64` coefficients in graded-lex monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericForm {
    pub degree: u32,
    pub coeffs: Vec<f64>,
}

/// Position of `x^i y^j z^{n−i−j}` in the dense graded-lex layout of degree `n`.
pub fn monomial_index(n: u32, i: u32, j: u32) -> usize {
    // Monomials with a larger x-exponent come first; within one x-exponent, larger y first.
    let before: u32 = (i + 1..=n).map(|a| n - a + 1).sum();
    (before + (n - i - j)) as usize
}

/// Exponent triples of degree `n` in dense layout order.
pub fn monomial_exponents(n: u32) -> std::sync::Arc<Vec<[u32; 3]>> {
    type Cache = Mutex<HashMap<u32, std::sync::Arc<Vec<[u32; 3]>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("monomial cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut v = Vec::new();
            for i in (0..=n).rev() {
                for j in (0..=n - i).rev() {
                    v.push([i, j, n - i - j]);
                }
            }
            std::sync::Arc::new(v)
        })
        .clone()
}

/// Number of monomials of degree `n` in three variables.
pub fn monomial_count(n: u32) -> usize {
    ((n + 1) * (n + 2) / 2) as usize
}

impl NumericForm {
    pub fn zero(degree: u32) -> Self {
        NumericForm {
            degree,
            coeffs: vec![0.0; monomial_count(degree)],
        }
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> f64 {
        debug_assert_eq!(i + j + k, self.degree);
        self.coeffs[monomial_index(self.degree, i, j)]
    }

    pub fn evaluate(&self, p: [f64; 3]) -> f64 {
        monomial_exponents(self.degree)
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| {
                c * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)
            })
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn mul(&self, rhs: &NumericForm) -> NumericForm {
        let n = self.degree + rhs.degree;
        let mut out = NumericForm::zero(n);
        let (ea, eb) = (
            monomial_exponents(self.degree),
            monomial_exponents(rhs.degree),
        );
        for (a, ca) in ea.iter().zip(&self.coeffs) {
            if *ca == 0.0 {
                continue;
            }
            for (b, cb) in eb.iter().zip(&rhs.coeffs) {
                out.coeffs[monomial_index(n, a[0] + b[0], a[1] + b[1])] += ca * cb;
            }
        }
        out
    }

    /// `g·v` with the same substitution convention as the exact action.
    pub fn act(&self, g: &Matrix3<f64>) -> NumericForm {
        let n = self.degree as usize;
        let powers: Vec<Vec<NumericForm>> = (0..3)
            .map(|c| {
                let mut l = NumericForm::zero(1);
                for r in 0..3 {
                    let e = [(r == 0) as u32, (r == 1) as u32];
                    l.coeffs[monomial_index(1, e[0], e[1])] = g.m[r][c];
                }
                let mut p = vec![NumericForm {
                    degree: 0,
                    coeffs: vec![1.0],
                }];
                for e in 1..=n {
                    let next = p[e - 1].mul(&l);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = NumericForm::zero(self.degree);
        for (e, c) in monomial_exponents(self.degree).iter().zip(&self.coeffs) {
            if *c == 0.0 {
                continue;
            }
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            for (o, v) in out.coeffs.iter_mut().zip(&t.coeffs) {
                *o += c * v;
            }
        }
        out
    }
}
