//! Rewriting `B3`-invariant rational functions of slice coordinates in terms of
//! generating invariants.
//!
//! Numerator and denominator are reduced independently to normal forms modulo
//! a rule system ([`rules::minimal_system`] for the generators `P`, or
//! [`rules::aux_system`] for the 13 auxiliary quartic generators). An invariant
//! input reduces to an expression in generators alone; any surviving
//! coordinate signals a non-invariant input.

pub mod engine;
pub mod mpoly;
pub mod rules;
pub mod symbols;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use engine::{Element, Engine, RuleSystem};
pub use mpoly::{EvalError, Mono, Poly};
pub use rules::{aux_generator_fractions, aux_system, minimal_generator_polys, minimal_system};
pub use symbols::{QuarticLayout, Sym};

use crate::expr::{self, Expr, Interpret, ParseError};
use crate::harmonic::{slice_basis, HarmonicError};
use crate::invariants::{
    bracket, delta, quartic_coordinates, slice_invariants, QuarticAuxInvariants,
};
use crate::poly::{rat, rational_to_f64, Rational, SignedPermutation};
use crate::slice::SliceCoordinates;

/// Default cap on rule applications per rewrite.
pub const DEFAULT_RULE_LIMIT: usize = 1_000_000;

/// Seed used by [`verify_rewrite`].
pub const DEFAULT_VERIFY_SEED: u64 = 0x5eed;

/// Rewriting failures.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RewriteError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("symbol {symbol} is not available for half-degree {d}")]
    OutsideSchema { symbol: String, d: u32 },
    #[error("input is not invariant; normal form retains coordinates: {residual}")]
    NotInvariant { residual: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("rewriting needs half-degree d ≥ 2 (aux system: d = 2), got {0}")]
    Degree(u32),
    #[error("rule-application limit {0} exceeded")]
    RuleLimit(usize),
    #[error("coordinate {0} appears with a negative power in a polynomial")]
    NegativeCoordinatePower(String),
    #[error("exponent {0} is out of range")]
    Exponent(i64),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// A fraction of two polynomials over [`Sym`].
#[derive(Clone, Debug, PartialEq)]
pub struct RationalExpr {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl RationalExpr {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self, RewriteError> {
        if denominator.is_zero() {
            return Err(RewriteError::DivisionByZero);
        }
        Ok(RationalExpr {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalExpr {
            numerator: p,
            denominator: Poly::one(),
        }
    }

    pub fn symbol(s: Sym) -> Self {
        RationalExpr::from_poly(Poly::var(s))
    }

    /// Parses the expression grammar of [`crate::expr`] over the symbols of
    /// [`symbols::resolve`], without quartic aliases.
    pub fn parse(text: &str) -> Result<Self, RewriteError> {
        RationalExpr::from_expr(&expr::parse(text)?, None)
    }

    /// Parses with the quartic aliases `lam[i]`, `r[i]`, `s[i]`, `t[i]` enabled when `d = 2`.
    pub fn parse_for_degree(text: &str, d: u32) -> Result<Self, RewriteError> {
        let layout = (d == 2).then(QuarticLayout::get);
        RationalExpr::from_expr(&expr::parse(text)?, layout.as_ref())
    }

    pub fn from_expr(e: &Expr, quartic: Option<&QuarticLayout>) -> Result<Self, RewriteError> {
        e.interpret(&mut Builder { quartic })
    }

    /// The expression as a syntax tree (sum of monomials over sum of monomials).
    pub fn to_expr(&self) -> Expr {
        let num = poly_to_expr(&self.numerator);
        if self.denominator == Poly::one() {
            num
        } else {
            num / poly_to_expr(&self.denominator)
        }
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        let mut s = self.numerator.symbols();
        s.extend(self.denominator.symbols());
        s
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.as_constant().is_some()
    }

    /// Exact value at the given symbol values.
    pub fn evaluate(
        &self,
        value: &mut dyn FnMut(Sym) -> Option<Rational>,
    ) -> Result<Rational, EvalError> {
        let den = self.denominator.evaluate(value)?;
        if den.is_zero() {
            return Err(EvalError::ZeroDenominator);
        }
        Ok(self.numerator.evaluate(value)? / den)
    }

    fn mul(&self, rhs: &Self) -> Self {
        RationalExpr {
            numerator: self.numerator.mul(&rhs.numerator),
            denominator: self.denominator.mul(&rhs.denominator),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.denominator == rhs.denominator {
            return RationalExpr {
                numerator: self.numerator.add(&rhs.numerator),
                denominator: self.denominator.clone(),
            };
        }
        RationalExpr {
            numerator: self
                .numerator
                .mul(&rhs.denominator)
                .add(&rhs.numerator.mul(&self.denominator)),
            denominator: self.denominator.mul(&rhs.denominator),
        }
    }

    fn neg(&self) -> Self {
        RationalExpr {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }

    fn recip(&self) -> Result<Self, RewriteError> {
        Ok(RationalExpr::new(self.denominator.clone(), self.numerator.clone())?.tidy())
    }

    /// Folds a constant denominator into the numerator.
    fn tidy(self) -> Self {
        match self.denominator.as_constant() {
            Some(c) if !c.is_one() => RationalExpr {
                numerator: self.numerator.scale(&(Rational::one() / c)),
                denominator: Poly::one(),
            },
            _ => self,
        }
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == Poly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

fn poly_to_expr(p: &Poly) -> Expr {
    let mut out: Option<Expr> = None;
    for (m, c) in p.terms() {
        let mut t = Expr::num(c.clone());
        for (s, e) in m {
            let sym = expr::parse(&s.to_string()).expect("symbol names parse");
            let f = if *e == 1 {
                sym
            } else {
                Expr::Pow {
                    base: Box::new(sym),
                    exp: *e as i64,
                }
            };
            t = t * f;
        }
        out = Some(match out {
            None => t,
            Some(acc) => acc + t,
        });
    }
    out.unwrap_or_else(|| Expr::num(Rational::zero()))
}

struct Builder<'a> {
    quartic: Option<&'a QuarticLayout>,
}

impl Interpret for Builder<'_> {
    type Value = RationalExpr;
    type Error = RewriteError;

    fn number(&mut self, value: &Rational) -> Result<RationalExpr, RewriteError> {
        Ok(RationalExpr::from_poly(Poly::constant(value.clone())))
    }

    fn symbol(&mut self, name: &str, indices: &[u32]) -> Result<RationalExpr, RewriteError> {
        symbols::resolve(name, indices, self.quartic)
            .map(RationalExpr::symbol)
            .ok_or_else(|| {
                let mut s = name.to_string();
                for i in indices {
                    s.push_str(&format!("[{i}]"));
                }
                RewriteError::UnknownSymbol(s)
            })
    }

    fn neg(&mut self, a: RationalExpr) -> Result<RationalExpr, RewriteError> {
        Ok(a.neg())
    }

    fn add(&mut self, a: RationalExpr, b: RationalExpr) -> Result<RationalExpr, RewriteError> {
        Ok(a.add(&b).tidy())
    }

    fn sub(&mut self, a: RationalExpr, b: RationalExpr) -> Result<RationalExpr, RewriteError> {
        Ok(a.add(&b.neg()).tidy())
    }

    fn mul(&mut self, a: RationalExpr, b: RationalExpr) -> Result<RationalExpr, RewriteError> {
        Ok(a.mul(&b).tidy())
    }

    fn div(&mut self, a: RationalExpr, b: RationalExpr) -> Result<RationalExpr, RewriteError> {
        Ok(a.mul(&b.recip()?).tidy())
    }

    fn pow(&mut self, a: RationalExpr, exp: i64) -> Result<RationalExpr, RewriteError> {
        if exp.unsigned_abs() > 256 {
            return Err(RewriteError::Exponent(exp));
        }
        let base = if exp < 0 { a.recip()? } else { a };
        let n = exp.unsigned_abs() as u32;
        Ok(RationalExpr {
            numerator: base.numerator.pow(n),
            denominator: base.denominator.pow(n),
        }
        .tidy())
    }
}

/// Result of a rewrite.
#[derive(Clone, Debug, PartialEq)]
pub struct Rewritten {
    /// The expression in generators only.
    pub expr: RationalExpr,
    /// The same expression keeping the abbreviation `D2` (minimal system) or
    /// `Il0` (auxiliary system) unexpanded.
    pub compact: RationalExpr,
    /// Number of rule applications (substitutions and monomial reductions).
    pub rule_applications: usize,
}

/// Rewrites an invariant in the minimal generators `P_{i,j}` (and `P_∞`).
pub fn rewrite_invariant(e: &RationalExpr, d: u32) -> Result<Rewritten, RewriteError> {
    let system = minimal_system(d)?;
    rewrite_with(&system, e, d, DEFAULT_RULE_LIMIT)
}

/// Rewrites a quartic invariant in the 13 auxiliary generators.
pub fn quartic_aux_rewrite(e: &RationalExpr) -> Result<Rewritten, RewriteError> {
    rewrite_with(&aux_system(), e, 2, DEFAULT_RULE_LIMIT)
}

/// Rewrites with an explicit system and rule-application cap.
pub fn rewrite_with(
    system: &RuleSystem,
    e: &RationalExpr,
    d: u32,
    limit: usize,
) -> Result<Rewritten, RewriteError> {
    if let Some(s) = e
        .symbols()
        .into_iter()
        .find(|s| !system.alphabet.contains(s))
    {
        return Err(RewriteError::OutsideSchema {
            symbol: s.to_string(),
            d,
        });
    }
    let e = match e.numerator.div_exact(&e.denominator) {
        Some(q) if e.denominator.as_constant().is_none() => &RationalExpr::from_poly(q),
        _ => e,
    };
    let mut engine = Engine::new(system, limit);
    let den_nf = engine.reduce(&e.denominator)?;
    let (num, den) = if engine.invariant_part(&den_nf).1.is_empty() {
        let num = invariant_nf(&mut engine, &e.numerator)?;
        (num, engine.invariant_part(&den_nf).0)
    } else {
        let num_nf = engine.reduce(&e.numerator)?;
        match proportional(system, &num_nf, &den_nf) {
            Some(pair) => pair,
            None => {
                // Multiply through by the other images of the denominator so
                // that it becomes the invariant product over its orbit.
                let extra = orbit(&e.denominator, d)?
                    .into_iter()
                    .filter(|q| *q != e.denominator)
                    .fold(Poly::one(), |acc, q| acc.mul(&q));
                let num = invariant_nf(&mut engine, &e.numerator.mul(&extra))?;
                let den = invariant_nf(&mut engine, &e.denominator.mul(&extra))?;
                (num, den)
            }
        }
    };
    let rule_applications = engine.applications();
    if system.canonical_numerator(&den).is_zero() {
        return Err(RewriteError::DivisionByZero);
    }
    let frac = normalize(num, den);
    let (mut n, mut dd) = (frac.numerator, frac.denominator);
    for (s, v) in &system.abbreviations {
        n = n
            .substitute(*s, v)
            .expect("normalized fractions have no negative powers");
        dd = dd
            .substitute(*s, v)
            .expect("normalized fractions have no negative powers");
    }
    for (_, v) in &system.abbreviations {
        while let (Some(n2), Some(d2)) = (n.div_exact(v), dd.div_exact(v)) {
            n = n2;
            dd = d2;
        }
    }
    let expr = normalize(n, dd);
    let compact = abbreviate(&expr, system);
    Ok(Rewritten {
        expr,
        compact,
        rule_applications,
    })
}

fn invariant_nf(engine: &mut Engine<'_>, p: &Poly) -> Result<Poly, RewriteError> {
    let nf = engine.reduce(p)?;
    let (constant, residual) = engine.invariant_part(&nf);
    if !residual.is_empty() {
        return Err(RewriteError::NotInvariant {
            residual: engine::element_to_poly(&nf).to_string(),
        });
    }
    Ok(constant)
}

/// Quotient of two normal forms that agree up to an invariant factor, read off
/// one coordinate monomial.
fn proportional(system: &RuleSystem, num: &Element, den: &Element) -> Option<(Poly, Poly)> {
    let (key, d0) = den
        .iter()
        .filter(|(_, c)| !system.canonical_numerator(c).is_zero())
        .min_by_key(|(_, c)| c.len())?;
    let n0 = num.get(key).cloned().unwrap_or_else(Poly::zero);
    let keys: BTreeSet<&Mono> = num.keys().chain(den.keys()).collect();
    for k in keys {
        let n = num.get(k).cloned().unwrap_or_else(Poly::zero);
        let dk = den.get(k).cloned().unwrap_or_else(Poly::zero);
        if !system
            .canonical_numerator(&n.mul(d0).sub(&n0.mul(&dk)))
            .is_zero()
        {
            return None;
        }
    }
    Some((n0, d0.clone()))
}

/// Replaces each factor of the denominator equal to an abbreviation's closed form by the abbreviation.
fn abbreviate(e: &RationalExpr, system: &RuleSystem) -> RationalExpr {
    let mut den = e.denominator.clone();
    let mut factors = Poly::one();
    for (s, v) in &system.abbreviations {
        while den.as_constant().is_none() {
            match den.div_exact(v) {
                Some(q) => {
                    den = q;
                    factors = factors.mul(&Poly::var(*s));
                }
                None => break,
            }
        }
    }
    RationalExpr {
        numerator: e.numerator.clone(),
        denominator: den.mul(&factors),
    }
}

/// Distinct images of a polynomial in slice coordinates under the 48 signed permutations.
pub fn orbit(p: &Poly, d: u32) -> Result<Vec<Poly>, RewriteError> {
    let basis = slice_basis(d)?;
    let mut out: Vec<Poly> = Vec::new();
    for g in SignedPermutation::all() {
        let f = |s: Sym| -> (Sym, i8) {
            match s {
                Sym::A(i) => {
                    let (zeta, xi) = basis.signature.get(0);
                    let (t, sign) = g.equivariant_image(i as usize - 1, zeta, xi);
                    (Sym::A(t as u8 + 1), sign)
                }
                Sym::Alpha(i, j) => {
                    let (zeta, xi) = basis.signature.get(j as usize);
                    let (t, sign) = g.equivariant_image(i as usize - 1, zeta, xi);
                    (Sym::Alpha(t as u8 + 1, j), sign)
                }
                other => (other, 1),
            }
        };
        let image = p.map_symbols(&f);
        if !out.contains(&image) {
            out.push(image);
        }
    }
    Ok(out)
}

/// Moves negative powers across the fraction bar, cancels the common monomial
/// factor and scales so that the denominator has unit content.
fn normalize(num: Poly, den: Poly) -> RationalExpr {
    if num.is_zero() {
        return RationalExpr::from_poly(Poly::zero());
    }
    let (mn, md) = (num.min_monomial(), den.min_monomial());
    let exp = |m: &Mono, s: Sym| {
        m.iter()
            .find(|(t, _)| *t == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    };
    let mut syms: Vec<Sym> = mn.iter().chain(md.iter()).map(|(s, _)| *s).collect();
    syms.sort();
    syms.dedup();
    let shift: Mono = syms
        .into_iter()
        .filter_map(|s| {
            let e = exp(&mn, s).min(exp(&md, s));
            (e != 0).then_some((s, -e))
        })
        .collect();
    let one = Rational::one();
    let (num, den) = (num.mul_mono(&shift, &one), den.mul_mono(&shift, &one));
    let scale = match den.as_constant() {
        Some(c) => c,
        None => den.content(),
    };
    let inv = Rational::one() / scale;
    RationalExpr {
        numerator: num.scale(&inv),
        denominator: den.scale(&inv),
    }
}

/// Exact values of every symbol at the given slice coordinates: the
/// coordinates, the minimal generators with `D2`, and for `d = 2` with distinct
/// `λ` the auxiliary generators with `Il0`.
pub fn symbol_values(
    c: &SliceCoordinates<Rational>,
) -> Result<HashMap<Sym, Rational>, RewriteError> {
    let mut out = HashMap::new();
    for i in 0..3 {
        out.insert(Sym::A(i as u8 + 1), c.a[i].clone());
    }
    for (jm1, t) in c.alpha.iter().enumerate() {
        for i in 0..3 {
            out.insert(Sym::Alpha(i as u8 + 1, jm1 as u16 + 1), t[i].clone());
        }
    }
    if let Some(x) = &c.alpha_infinity {
        out.insert(Sym::AlphaInf, x.clone());
    }
    let inv = slice_invariants(c).map_err(|_| RewriteError::Degree(c.half_degree))?;
    for i in 0..3 {
        out.insert(Sym::P(i as u8 + 1, 0), inv.p0[i].clone());
    }
    for (jm1, t) in inv.p.iter().enumerate() {
        for i in 0..3 {
            out.insert(Sym::P(i as u8 + 1, jm1 as u16 + 1), t[i].clone());
        }
    }
    if let Some(x) = &inv.p_infinity {
        out.insert(Sym::PInf, x.clone());
    }
    let dl = delta(&c.a);
    out.insert(Sym::D2, &dl * &dl);
    if c.half_degree == 2 {
        if let Ok(aux) = crate::invariants::quartic_aux_invariants(c) {
            let QuarticAuxInvariants {
                lambda,
                r,
                s,
                t,
                t0,
            } = aux;
            for i in 0..3 {
                out.insert(Sym::Il(i as u8 + 1), lambda[i].clone());
                out.insert(Sym::Ir(i as u8 + 1), r[i].clone());
                out.insert(Sym::Is(i as u8 + 1), s[i].clone());
                out.insert(Sym::It(i as u8 + 1), t[i].clone());
            }
            out.insert(Sym::It0, t0);
            let q = quartic_coordinates(c).expect("d = 2");
            let b = bracket(&q.lambda);
            out.insert(Sym::Il0, &b * &b);
        }
    }
    Ok(out)
}

/// Random slice coordinates with small rational entries, generic in the sense
/// that the `a_i` are nonzero with distinct squares and (for `d = 2`) the `λ_i`
/// are distinct.
pub fn random_coordinates(
    d: u32,
    rng: &mut impl Rng,
) -> Result<SliceCoordinates<Rational>, RewriteError> {
    let basis = slice_basis(d)?;
    let draw = |rng: &mut dyn rand::RngCore| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    loop {
        let flat: Vec<Rational> = (0..basis.dimension()).map(|_| draw(rng)).collect();
        let c = SliceCoordinates::from_flat(d, &flat).map_err(|_| RewriteError::Degree(d))?;
        if delta(&c.a).is_zero() || c.a.iter().any(|x| x.is_zero()) {
            continue;
        }
        if d == 2 && bracket(&quartic_coordinates(&c).expect("d = 2").lambda).is_zero() {
            continue;
        }
        return Ok(c);
    }
}

/// Checks `original = rewritten` at `samples` random generic slice points.
pub fn verify_rewrite(
    original: &RationalExpr,
    rewritten: &RationalExpr,
    d: u32,
    samples: usize,
) -> bool {
    verify_rewrite_seeded(original, rewritten, d, samples, DEFAULT_VERIFY_SEED)
}

/// [`verify_rewrite`] with an explicit seed. Points where either side has a
/// vanishing denominator are redrawn, up to ten draws per sample.
pub fn verify_rewrite_seeded(
    original: &RationalExpr,
    rewritten: &RationalExpr,
    d: u32,
    samples: usize,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreed = 0;
    for _ in 0..samples.saturating_mul(10) {
        if agreed == samples {
            break;
        }
        let Ok(c) = random_coordinates(d, &mut rng) else {
            return false;
        };
        let Ok(values) = symbol_values(&c) else {
            return false;
        };
        let mut lookup = |s: Sym| values.get(&s).cloned();
        let (x, y) = match (
            original.evaluate(&mut lookup),
            rewritten.evaluate(&mut lookup),
        ) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(EvalError::ZeroDenominator | EvalError::Pole(_)), _)
            | (_, Err(EvalError::ZeroDenominator | EvalError::Pole(_))) => continue,
            _ => return false,
        };
        if !crate::rel_close(rational_to_f64(&x), rational_to_f64(&y), 1e-9) {
            return false;
        }
        agreed += 1;
    }
    agreed == samples
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn parse(s: &str) -> RationalExpr {
        RationalExpr::parse(s).unwrap()
    }

    #[test]
    fn generator_rewrites_to_itself() {
        let r = rewrite_invariant(&parse("a1^2 + a2^2 + a3^2"), 2).unwrap();
        assert_eq!(r.expr, parse("P[1][0]"));
        let r = rewrite_invariant(&parse("a1 a2 a3"), 3).unwrap();
        assert_eq!(r.expr, parse("P[2][0]"));
    }

    #[test]
    fn sixth_power_sum() {
        let input = parse("a1^6 + a2^6 + a3^6");
        let r = rewrite_invariant(&input, 2).unwrap();
        assert_eq!(
            r.expr,
            parse("3/2 P[1][0] P[3][0] - 1/2 P[1][0]^3 + 3 P[2][0]^2")
        );
        assert!(verify_rewrite(&input, &r.expr, 2, 20));
    }

    #[test]
    fn asymmetric_input_is_not_invariant() {
        assert!(matches!(
            rewrite_invariant(&parse("a1 + a2"), 2),
            Err(RewriteError::NotInvariant { .. })
        ));
        assert!(matches!(
            rewrite_invariant(&parse("a1^2"), 2),
            Err(RewriteError::NotInvariant { .. })
        ));
    }

    #[test]
    fn delta_squared_matches_its_closed_form() {
        let d2 = RationalExpr::from_poly(rules::delta_poly().pow(2));
        let r = rewrite_invariant(&d2, 2).unwrap();
        assert_eq!(r.expr.numerator, rules::d2_closed_form());
        assert_eq!(r.expr.denominator, Poly::one());
    }

    #[test]
    fn minimal_generators_rewrite_to_themselves() {
        for d in 2..=3 {
            for (sym, p) in minimal_generator_polys(d).unwrap() {
                let r = rewrite_invariant(&RationalExpr::from_poly(p), d).unwrap();
                assert_eq!(r.expr, RationalExpr::symbol(sym), "d = {d}, {sym}");
            }
        }
    }

    #[test]
    fn symbols_outside_schema_are_rejected() {
        assert!(matches!(
            rewrite_invariant(&parse("al[1][9]"), 2),
            Err(RewriteError::OutsideSchema { .. })
        ));
        assert!(matches!(
            rewrite_invariant(&parse("ainf"), 2),
            Err(RewriteError::OutsideSchema { .. })
        ));
        assert!(rewrite_invariant(&parse("ainf"), 3).is_ok());
        assert!(matches!(parse_err("foo"), RewriteError::UnknownSymbol(_)));
    }

    fn parse_err(s: &str) -> RewriteError {
        RationalExpr::parse(s).unwrap_err()
    }

    #[test]
    fn verify_detects_corruption() {
        let input = parse("a1^6 + a2^6 + a3^6");
        let wrong = parse("3/2 P[1][0] P[3][0] - 1/2 P[1][0]^3 + 4 P[2][0]^2");
        assert!(!verify_rewrite(&input, &wrong, 2, 20));
        assert!(verify_rewrite(&parse("P[1][0]"), &parse("P[1][0]"), 2, 5));
    }

    #[test]
    fn aux_generators_rewrite_to_themselves() {
        for (sym, num, den) in aux_generator_fractions() {
            let e = RationalExpr::new(num, den).unwrap();
            let r = quartic_aux_rewrite(&e).unwrap();
            assert!(
                verify_rewrite(&RationalExpr::symbol(sym), &r.expr, 2, 10),
                "{sym}: {}",
                r.expr
            );
        }
    }

    #[test]
    fn aux_examples() {
        let r = quartic_aux_rewrite(
            &RationalExpr::parse_for_degree("lam[1] + lam[2] + lam[3]", 2).unwrap(),
        )
        .unwrap();
        assert_eq!(r.expr, parse("Il[1]"));
        let r = quartic_aux_rewrite(&parse("a1 a2 a3")).unwrap();
        assert_eq!(r.expr, parse("It0"));
    }

    #[test]
    fn rational_input_and_display() {
        let e = parse("(a1^2 + a2^2 + a3^2) / (a1 a2 a3)");
        let r = rewrite_invariant(&e, 2).unwrap();
        assert_eq!(r.expr.to_string(), "(P[1][0]) / (P[2][0])");
        assert_eq!(
            RationalExpr::from_expr(&r.expr.to_expr(), None).unwrap(),
            r.expr
        );
        assert_eq!(
            r.expr
                .evaluate(&mut |s| Some(if s == Sym::P(1, 0) { int(6) } else { int(4) })),
            Ok(rat(3, 2))
        );
    }
}
