//! Fixtures shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use ternary_invariants::poly::{int, monomial_exponents};
use ternary_invariants::{Matrix3, TernaryForm};

/// A form of degree `n` with independent integer coefficients in `[-9, 9]`.
pub fn random_form<R: Rng>(n: u32, rng: &mut R) -> TernaryForm {
    let exps = monomial_exponents(n);
    TernaryForm::from_terms(n, exps.iter().map(|e| (*e, int(rng.gen_range(-9..=9)))))
        .expect("exponents have degree n")
}

/// A uniformly distributed rotation, from a unit quaternion drawn by rejection in the 4-ball.
pub fn random_rotation<R: Rng>(rng: &mut R) -> Matrix3<f64> {
    let q = loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-3 && n2 <= 1.0 {
            let n = n2.sqrt();
            break v.map(|x| x / n);
        }
    };
    let [w, x, y, z] = q;
    Matrix3::new([
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ])
}

/// Largest entrywise `|x − y| / (1 + max(|x|, |y|))`.
pub fn max_rel_dev(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs() / (1.0 + a.abs().max(b.abs())))
        .fold(0.0, f64::max)
}
