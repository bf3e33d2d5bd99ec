//! Closed-formula harmonic generators `Vg_ℓ` and `Vf_ℓ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::HarmonicError;
use crate::poly::{Rational, SignedPermutation, TernaryForm};

/// Generalized binomial `a(a−1)…(a−b+1)/b!` for `b ≥ 0`, and `0` for `b < 0`.
pub fn signed_binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..b {
        num *= BigInt::from(a - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// Multinomial coefficient `(a+b+c)! / (a! b! c!)`.
pub fn multinomial(a: u32, b: u32, c: u32) -> BigInt {
    let f = crate::poly::factorials(a + b + c);
    &f[(a + b + c) as usize] / (&f[a as usize] * &f[b as usize] * &f[c as usize])
}

/// The coefficient `β_{i,j,k}` of a generator with parameter `D` and x-degree `2ℓ`.
fn beta(big_d: i64, l: i64, i: i64, j: i64) -> BigInt {
    let sign = if j % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    if (big_d - l) % 2 == 1 {
        let s = (big_d - l + 1) / 2;
        sign * signed_binomial(j - s, l - i)
    } else {
        let s = (big_d - l) / 2;
        sign * (signed_binomial(j - s, l - i) + signed_binomial(j - s - 1, l - i))
    }
}

/// `Vg_ℓ ∈ H_{2d}`: all exponents even, x-degree `2ℓ`.
pub fn even_generator(d: u32, l: u32) -> Result<TernaryForm, HarmonicError> {
    if d < 1 || l > d {
        return Err(HarmonicError::OutOfRange(format!(
            "even generator needs d ≥ 1 and 0 ≤ ℓ ≤ d, got d = {d}, ℓ = {l}"
        )));
    }
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let k = d - i - j;
            let b = beta(d as i64, l as i64, i as i64, j as i64);
            if b.is_zero() {
                continue;
            }
            let c = multinomial(2 * i, 2 * j, 2 * k) * b;
            terms.push(([2 * i, 2 * j, 2 * k], Rational::from_integer(c)));
        }
    }
    Ok(TernaryForm::from_terms(2 * d, terms).expect("exponents sum to 2d"))
}

/// `Vf_ℓ ∈ H_{2d}`: x-exponent even, y- and z-exponents odd, x-degree `2ℓ`.
pub fn odd_generator(d: u32, l: u32) -> Result<TernaryForm, HarmonicError> {
    if d < 1 || l + 1 > d {
        return Err(HarmonicError::OutOfRange(format!(
            "odd generator needs d ≥ 1 and 0 ≤ ℓ ≤ d − 1, got d = {d}, ℓ = {l}"
        )));
    }
    let dd = d - 1;
    let mut terms = Vec::new();
    for i in 0..=dd {
        for j in 0..=dd - i {
            let k = dd - i - j;
            let b = beta(dd as i64, l as i64, i as i64, j as i64);
            if b.is_zero() {
                continue;
            }
            let c = multinomial(2 * i, 2 * j + 1, 2 * k + 1) * b;
            terms.push(([2 * i, 2 * j + 1, 2 * k + 1], Rational::from_integer(c)));
        }
    }
    Ok(TernaryForm::from_terms(2 * d, terms).expect("exponents sum to 2d"))
}

/// `(v, g_c v, g_c² v)` for the cyclic substitution `x → y → z → x`.
pub fn cyclic_images(v: &TernaryForm) -> [TernaryForm; 3] {
    let g = SignedPermutation::cyclic().matrix();
    let v1 = v.act_unchecked(&g);
    let v2 = v1.act_unchecked(&g);
    [v.clone(), v1, v2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn form(s: &str) -> TernaryForm {
        TernaryForm::parse(s).unwrap()
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(signed_binomial(-1, 2), BigInt::from(1));
        assert_eq!(signed_binomial(3, 5), BigInt::zero());
        assert_eq!(signed_binomial(7, -1), BigInt::zero());
        assert_eq!(signed_binomial(-3, 3), BigInt::from(-10));
        assert_eq!(signed_binomial(5, 0), BigInt::one());
    }

    #[test]
    fn quartic_generators() {
        assert_eq!(
            even_generator(2, 0).unwrap(),
            form("2y^4 - 12y^2z^2 + 2z^4")
        );
        let vs = form("y^3 z - y z^3");
        assert_eq!(odd_generator(2, 0).unwrap().ratio_to(&vs), Some(int(-4)));
        let vt = form("6x^2 y z - y^3 z - y z^3");
        assert_eq!(odd_generator(2, 1).unwrap().ratio_to(&vt), Some(int(4)));
    }

    #[test]
    fn sextic_odd_generator_matches_printed_element() {
        let u13 = form("-10x^2 y^3 z + 10 x^2 y z^3 + y^5 z - y z^5");
        assert!(odd_generator(3, 1).unwrap().ratio_to(&u13).is_some());
    }

    #[test]
    fn generators_are_harmonic_with_structural_properties() {
        for d in 2..=6u32 {
            let swap = crate::poly::SignedPermutation::permutation([0, 2, 1]).matrix();
            for l in 0..=d {
                let v = even_generator(d, l).unwrap();
                assert!(v.laplacian().unwrap().is_zero(), "Vg d={d} l={l}");
                assert_eq!(v.x_degree(), Some(2 * l));
                assert!(v
                    .terms()
                    .all(|(e, _)| e.i % 2 == 0 && e.j % 2 == 0 && e.k % 2 == 0));
                let sign = if (d - l) % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(v.act(&swap).unwrap(), v.scale(&sign));
                for (e, _) in v.terms().filter(|(e, _)| e.i == 0) {
                    assert!((e.j as i64 / 2 - e.k as i64 / 2).unsigned_abs() >= l as u64);
                }
            }
            for l in 0..d {
                let v = odd_generator(d, l).unwrap();
                assert!(v.laplacian().unwrap().is_zero(), "Vf d={d} l={l}");
                assert_eq!(v.x_degree(), Some(2 * l));
                assert!(v
                    .terms()
                    .all(|(e, _)| e.i % 2 == 0 && e.j % 2 == 1 && e.k % 2 == 1));
                let sign = if (d - l) % 2 == 1 { int(1) } else { int(-1) };
                assert_eq!(v.act(&swap).unwrap(), v.scale(&sign));
            }
        }
    }

    #[test]
    fn vg_2_2_omits_balanced_monomial() {
        let v = even_generator(2, 2).unwrap();
        assert_eq!(v.x_degree(), Some(4));
        assert!(v.coeff(0, 2, 2).is_zero());
    }

    #[test]
    fn range_errors() {
        assert!(even_generator(2, 3).is_err());
        assert!(odd_generator(2, 2).is_err());
    }

    #[test]
    fn cyclic_images_of_simple_forms() {
        let [a, b, c] = cyclic_images(&form("x^4"));
        assert_eq!((a, b, c), (form("x^4"), form("y^4"), form("z^4")));
        let q2 = TernaryForm::q_power(2);
        let imgs = cyclic_images(&q2);
        assert!(imgs.iter().all(|v| *v == q2));
        let [_, vr2, vr3] = cyclic_images(&form("y^4 - 6y^2z^2 + z^4"));
        assert_eq!(vr2, form("z^4 - 6z^2x^2 + x^4"));
        assert_eq!(vr3, form("x^4 - 6x^2y^2 + y^4"));
    }
}
