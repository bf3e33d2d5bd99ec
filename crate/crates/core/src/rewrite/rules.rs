//! The two rule systems: the minimal generators `P` for every `d ≥ 2` and the
//! 13 auxiliary quartic generators.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::engine::RuleSystem;
use super::mpoly::{Mono, Poly};
use super::symbols::{QuarticBlock, QuarticLayout, Sym};
use super::RewriteError;
use crate::harmonic::slice_basis;
use crate::poly::rat;

type Mat3 = [[Poly; 3]; 3];

fn v(s: Sym) -> Poly {
    Poly::var(s)
}

fn c(n: i64, d: i64) -> Poly {
    Poly::constant(rat(n, d))
}

fn mono(parts: &[(Sym, i32)]) -> Mono {
    let mut m: Mono = parts.iter().cloned().collect();
    m.sort_by_key(|(s, _)| *s);
    m
}

/// Adjugate of a 3×3 matrix: `m · adj(m) = det(m) · I`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let (k1, k2, i1, i2) = ((k + 1) % 3, (k + 2) % 3, (i + 1) % 3, (i + 2) % 3);
            m[k1][i1].mul(&m[k2][i2]).sub(&m[k1][i2].mul(&m[k2][i1]))
        })
    })
}

/// Determinant of a 3×3 matrix.
pub fn determinant(m: &Mat3) -> Poly {
    let adj = adjugate(m);
    (0..3).fold(Poly::zero(), |acc, k| acc.add(&m[0][k].mul(&adj[k][0])))
}

/// `(x1 − x2)(x2 − x3)(x3 − x1)`.
pub fn bracket_poly(x: &[Poly; 3]) -> Poly {
    x[0].sub(&x[1]).mul(&x[1].sub(&x[2])).mul(&x[2].sub(&x[0]))
}

fn squares() -> [Poly; 3] {
    std::array::from_fn(|i| v(Sym::A(i as u8 + 1)).pow(2))
}

/// `δ = (a1² − a2²)(a2² − a3²)(a3² − a1²)`.
pub fn delta_poly() -> Poly {
    bracket_poly(&squares())
}

/// The matrix with rows `(1, 1, 1)`, `(a_i²)`, `(a_i⁴)`.
pub fn minimal_vandermonde() -> Mat3 {
    let sq = squares();
    std::array::from_fn(|r| std::array::from_fn(|i| sq[i].pow(r as u32)))
}

/// The matrix with rows `(1, λ_i, λ_i²)`.
pub fn lambda_vandermonde(layout: &QuarticLayout) -> Mat3 {
    std::array::from_fn(|i| {
        let l = v(layout.sym(QuarticBlock::Lambda, i as u8 + 1));
        [Poly::one(), l.clone(), l.pow(2)]
    })
}

/// `δ²` in the minimal generators.
pub fn d2_closed_form() -> Poly {
    let (p1, p2, p3) = (v(Sym::P(1, 0)), v(Sym::P(2, 0)), v(Sym::P(3, 0)));
    let t = |k: Poly, f: &[(&Poly, u32)]| f.iter().fold(k, |acc, (x, e)| acc.mul(&x.pow(*e)));
    [
        t(c(1, 2), &[(&p3, 3)]),
        t(c(-1, 4), &[(&p1, 6)]),
        t(c(-27, 1), &[(&p2, 4)]),
        t(c(1, 1), &[(&p1, 4), (&p3, 1)]),
        t(c(-5, 4), &[(&p1, 2), (&p3, 2)]),
        t(c(-9, 1), &[(&p2, 2), (&p1, 1), (&p3, 1)]),
        t(c(5, 1), &[(&p2, 2), (&p1, 3)]),
    ]
    .iter()
    .fold(Poly::zero(), |acc, x| acc.add(x))
}

/// `[λ]²` in the auxiliary power sums.
pub fn il0_closed_form() -> Poly {
    let (l1, l2, l3) = (v(Sym::Il(1)), v(Sym::Il(2)), v(Sym::Il(3)));
    let t = |k: Poly, f: &[(&Poly, u32)]| f.iter().fold(k, |acc, (x, e)| acc.mul(&x.pow(*e)));
    [
        t(c(3, 2), &[(&l2, 1), (&l1, 4)]),
        t(c(-1, 6), &[(&l1, 6)]),
        t(c(6, 1), &[(&l3, 1), (&l2, 1), (&l1, 1)]),
        t(c(-4, 3), &[(&l3, 1), (&l1, 3)]),
        t(c(-7, 2), &[(&l2, 2), (&l1, 2)]),
        t(c(-3, 1), &[(&l3, 2)]),
        t(c(1, 2), &[(&l2, 3)]),
    ]
    .iter()
    .fold(Poly::zero(), |acc, x| acc.add(x))
}

/// Rules shared by both systems for the `a`-coordinates in terms of
/// `e1 = Σ a_i²`, `π = a1 a2 a3` and `s4 = Σ a_i⁴`.
fn a_rules(e1: &Poly, pi_sym: Sym, s4: &Poly) -> Vec<(Mono, Poly)> {
    let (a2, a3) = (v(Sym::A(2)), v(Sym::A(3)));
    let pi = v(pi_sym);
    let half = s4.sub(&e1.pow(2)).scale(&rat(1, 2));
    let a1 = e1
        .mul(&a2)
        .mul(&a3)
        .sub(&a2.pow(3).mul(&a3))
        .sub(&a2.mul(&a3.pow(3)))
        .mul(&Poly::var_pow(pi_sym, -1));
    let a2_4 = e1
        .mul(&a2.pow(2))
        .sub(&a2.pow(2).mul(&a3.pow(2)))
        .add(&e1.mul(&a3.pow(2)))
        .sub(&a3.pow(4))
        .add(&half);
    let a3_6 = half
        .mul(&a3.pow(2))
        .add(&e1.mul(&a3.pow(4)))
        .add(&pi.pow(2));
    let a1_sq = e1.sub(&a2.pow(2)).sub(&a3.pow(2));
    vec![
        (mono(&[(Sym::A(1), 2)]), a1_sq),
        (mono(&[(Sym::A(1), 1)]), a1),
        (mono(&[(Sym::A(2), 4)]), a2_4),
        (mono(&[(Sym::A(3), 6)]), a3_6),
    ]
}

fn build_minimal(d: u32) -> Result<RuleSystem, RewriteError> {
    let basis = slice_basis(d)?;
    let mut alphabet: BTreeSet<Sym> = BTreeSet::new();
    let mut substitutions = HashMap::new();
    for i in 1..=3u8 {
        alphabet.insert(Sym::A(i));
        alphabet.insert(Sym::P(i, 0));
    }
    alphabet.insert(Sym::D2);
    let adj = adjugate(&minimal_vandermonde());
    let delta = v(Sym::Delta);
    let inv_d2 = Poly::var_pow(Sym::D2, -1);
    for j in 1..basis.k_slice {
        let (zeta, xi) = basis.signature.get(j);
        let j16 = j as u16;
        for i in 0..3usize {
            let sym = Sym::Alpha(i as u8 + 1, j16);
            alphabet.insert(sym);
            alphabet.insert(Sym::P(i as u8 + 1, j16));
            let mut rhs = (0..3).fold(Poly::zero(), |acc, k| {
                acc.add(&adj[i][k].mul(&v(Sym::P(k as u8 + 1, j16))))
            });
            rhs = rhs.mul(&inv_d2);
            if zeta == 0 {
                rhs = rhs.mul(&delta);
            }
            if xi == 1 {
                let others =
                    v(Sym::A(((i + 1) % 3) as u8 + 1)).mul(&v(Sym::A(((i + 2) % 3) as u8 + 1)));
                rhs = rhs.mul(&others).mul(&Poly::var_pow(Sym::P(2, 0), -1));
            }
            substitutions.insert(sym, rhs);
        }
    }
    if basis.w_infinity.is_some() {
        alphabet.insert(Sym::AlphaInf);
        alphabet.insert(Sym::PInf);
        substitutions.insert(Sym::AlphaInf, v(Sym::PInf));
    }
    let mut reductions = vec![(mono(&[(Sym::Delta, 2)]), v(Sym::D2))];
    reductions.extend(a_rules(&v(Sym::P(1, 0)), Sym::P(2, 0), &v(Sym::P(3, 0))));
    Ok(RuleSystem {
        substitutions,
        reductions,
        deferred: vec![(Sym::Delta, delta_poly())],
        abbreviations: vec![(Sym::D2, d2_closed_form())],
        alphabet,
    })
}

fn build_aux() -> RuleSystem {
    let layout = QuarticLayout::get();
    let lam = |i: usize| v(layout.sym(QuarticBlock::Lambda, i as u8 + 1));
    let t = |i: usize| v(Sym::A(i as u8 + 1));
    let e1 = |i: usize, g: fn(u8) -> Sym| {
        (0..3).fold(Poly::zero(), |acc, k| {
            acc.add(&lam(i).pow(k as u32).mul(&v(g(k as u8 + 1))))
        })
    };
    let lam_bracket = bracket_poly(&std::array::from_fn(lam));
    let inv = |s: Sym| Poly::var_pow(s, -1);
    let mut alphabet: BTreeSet<Sym> = BTreeSet::new();
    let mut substitutions = HashMap::new();
    for i in 0..3usize {
        let i8 = i as u8 + 1;
        for s in [
            Sym::A(i8),
            layout.sym(QuarticBlock::Lambda, i8),
            layout.sym(QuarticBlock::R, i8),
            layout.sym(QuarticBlock::S, i8),
            Sym::Il(i8),
            Sym::Ir(i8),
            Sym::Is(i8),
            Sym::It(i8),
        ] {
            alphabet.insert(s);
        }
        substitutions.insert(layout.sym(QuarticBlock::R, i8), e1(i, Sym::Ir));
        let s_rhs = v(Sym::LamBracket)
            .mul(&inv(Sym::Il0))
            .mul(&inv(Sym::It0))
            .mul(&t((i + 1) % 3))
            .mul(&t((i + 2) % 3))
            .mul(&e1(i, Sym::Is));
        substitutions.insert(layout.sym(QuarticBlock::S, i8), s_rhs);
    }
    alphabet.insert(Sym::It0);
    alphabet.insert(Sym::Il0);
    let (il1, il2, il3) = (v(Sym::Il(1)), v(Sym::Il(2)), v(Sym::Il(3)));
    substitutions.insert(
        layout.sym(QuarticBlock::Lambda, 1),
        il1.sub(&lam(1)).sub(&lam(2)),
    );
    let mut reductions = vec![
        (mono(&[(Sym::LamBracket, 2)]), v(Sym::Il0)),
        (
            mono(&[(Sym::A(1), 1), (Sym::A(2), 1), (Sym::A(3), 1)]),
            v(Sym::It0),
        ),
    ];
    for i in 0..3 {
        reductions.push((mono(&[(Sym::A(i as u8 + 1), 2)]), e1(i, Sym::It)));
    }
    for i in 0..3usize {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let rhs = inv(Sym::It0)
            .mul(&t(i))
            .mul(&e1(j, Sym::It))
            .mul(&e1(k, Sym::It));
        reductions.push((
            mono(&[(Sym::A(j as u8 + 1), 1), (Sym::A(k as u8 + 1), 1)]),
            rhs,
        ));
    }
    let (l2, l3) = (lam(1), lam(2));
    let half = il2.sub(&il1.pow(2)).scale(&rat(1, 2));
    let l2_sq = il1
        .mul(&l2)
        .add(&il1.mul(&l3))
        .sub(&l3.mul(&l2))
        .sub(&l3.pow(2))
        .add(&half);
    let l3_cu = il3
        .scale(&rat(1, 3))
        .add(&il1.pow(3).scale(&rat(1, 6)))
        .sub(&il2.mul(&il1).scale(&rat(1, 2)))
        .add(&half.mul(&l3))
        .add(&il1.mul(&l3.pow(2)));
    reductions.push((mono(&[(layout.sym(QuarticBlock::Lambda, 2), 2)]), l2_sq));
    reductions.push((mono(&[(layout.sym(QuarticBlock::Lambda, 3), 3)]), l3_cu));
    RuleSystem {
        substitutions,
        reductions,
        deferred: vec![(Sym::LamBracket, lam_bracket)],
        abbreviations: vec![(Sym::Il0, il0_closed_form())],
        alphabet,
    }
}

/// Cached minimal-generator rule system for half-degree `d ≥ 2`.
pub fn minimal_system(d: u32) -> Result<Arc<RuleSystem>, RewriteError> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RuleSystem>>>> = OnceLock::new();
    if d < 2 {
        return Err(RewriteError::Degree(d));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("rule cache poisoned").get(&d) {
        return Ok(s.clone());
    }
    let s = Arc::new(build_minimal(d)?);
    Ok(cache
        .lock()
        .expect("rule cache poisoned")
        .entry(d)
        .or_insert(s)
        .clone())
}

/// Cached auxiliary quartic rule system.
pub fn aux_system() -> Arc<RuleSystem> {
    static CACHE: OnceLock<Arc<RuleSystem>> = OnceLock::new();
    CACHE.get_or_init(|| Arc::new(build_aux())).clone()
}

/// The minimal generators as polynomials in slice coordinates, in the flat order
/// `p_{1,0}, p_{2,0}, p_{3,0}`, then `p_{i,j}` by `j` then `i`, then `p_∞`.
pub fn minimal_generator_polys(d: u32) -> Result<Vec<(Sym, Poly)>, RewriteError> {
    let basis = slice_basis(d)?;
    let a = |i: usize| v(Sym::A(i as u8 + 1));
    let sq = squares();
    let mut out = vec![
        (
            Sym::P(1, 0),
            sq.iter().fold(Poly::zero(), |acc, x| acc.add(x)),
        ),
        (Sym::P(2, 0), a(0).mul(&a(1)).mul(&a(2))),
        (
            Sym::P(3, 0),
            sq.iter().fold(Poly::zero(), |acc, x| acc.add(&x.pow(2))),
        ),
    ];
    let vm = minimal_vandermonde();
    let delta = delta_poly();
    for j in 1..basis.k_slice {
        let (zeta, xi) = basis.signature.get(j);
        let col: [Poly; 3] = std::array::from_fn(|i| {
            let mut m = v(Sym::Alpha(i as u8 + 1, j as u16));
            if xi == 1 {
                m = m.mul(&a(i));
            }
            if zeta == 1 {
                m = m.mul(&delta);
            }
            m
        });
        for r in 0..3 {
            let p = (0..3).fold(Poly::zero(), |acc, i| acc.add(&vm[r][i].mul(&col[i])));
            out.push((Sym::P(r as u8 + 1, j as u16), p));
        }
    }
    if basis.w_infinity.is_some() {
        out.push((Sym::PInf, v(Sym::AlphaInf)));
    }
    Ok(out)
}

/// The 13 auxiliary quartic generators as fractions of coordinate polynomials,
/// in the order `Il1..3, Ir1..3, Is1..3, It1..3, It0`.
pub fn aux_generator_fractions() -> Vec<(Sym, Poly, Poly)> {
    let layout = QuarticLayout::get();
    let lam = |i: usize| v(layout.sym(QuarticBlock::Lambda, i as u8 + 1));
    let r = |i: usize| v(layout.sym(QuarticBlock::R, i as u8 + 1));
    let s = |i: usize| v(layout.sym(QuarticBlock::S, i as u8 + 1));
    let t = |i: usize| v(Sym::A(i as u8 + 1));
    let e1 = lambda_vandermonde(&layout);
    let adj = adjugate(&e1);
    let det = determinant(&e1);
    let lam_bracket = bracket_poly(&std::array::from_fn(lam));
    let mut out = Vec::with_capacity(13);
    for k in 1..=3u32 {
        let p = (0..3).fold(Poly::zero(), |acc, i| acc.add(&lam(i).pow(k)));
        out.push((Sym::Il(k as u8), p, Poly::one()));
    }
    type Family = (fn(u8) -> Sym, [Poly; 3]);
    let rhs: [Family; 3] = [
        (Sym::Ir, std::array::from_fn(r)),
        (
            Sym::Is,
            std::array::from_fn(|i| s(i).mul(&t(i)).mul(&lam_bracket)),
        ),
        (Sym::It, std::array::from_fn(|i| t(i).pow(2))),
    ];
    for (g, b) in rhs {
        for row in 0..3 {
            let p = (0..3).fold(Poly::zero(), |acc, i| acc.add(&adj[row][i].mul(&b[i])));
            out.push((g(row as u8 + 1), p, det.clone()));
        }
    }
    out.push((Sym::It0, t(0).mul(&t(1)).mul(&t(2)), Poly::one()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn vandermonde_determinant_is_delta() {
        assert_eq!(determinant(&minimal_vandermonde()), delta_poly());
        let m = minimal_vandermonde();
        let adj = adjugate(&m);
        let det = determinant(&m);
        for r in 0..3 {
            for c in 0..3 {
                let e = (0..3).fold(Poly::zero(), |acc, k| acc.add(&m[r][k].mul(&adj[k][c])));
                assert_eq!(e, if r == c { det.clone() } else { Poly::zero() });
            }
        }
    }

    #[test]
    fn il0_closed_form_at_one_two_three() {
        let val = il0_closed_form()
            .evaluate(&mut |s| match s {
                Sym::Il(1) => Some(int(6)),
                Sym::Il(2) => Some(int(14)),
                Sym::Il(3) => Some(int(36)),
                _ => None,
            })
            .unwrap();
        assert_eq!(val, int(4));
    }
}
