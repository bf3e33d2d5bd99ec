//! Normal forms modulo a rewrite-rule system.
//!
//! A system eliminates some coordinates outright (`substitutions`) and reduces
//! monomials in the remaining coordinates by ordered monomial rules. Normal
//! forms live in the quotient algebra spanned by the irreducible coordinate
//! monomials over the field of generator expressions, so products are formed
//! factor by factor and only products of irreducible monomials are ever
//! reduced. Every reduction is memoized.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;

use super::mpoly::{mono_div, mono_mul, mono_split, Mono, Poly};
use super::symbols::Sym;
use super::RewriteError;
use crate::poly::Rational;

/// Quotient-algebra element: irreducible coordinate monomial ↦ generator coefficient.
pub type Element = BTreeMap<Mono, Poly>;

/// Rule system over slice coordinates.
#[derive(Clone, Debug)]
pub struct RuleSystem {
    /// Coordinates replaced outright.
    pub substitutions: HashMap<Sym, Poly>,
    /// Monomial rules `lhs → rhs`, tried in order.
    pub reductions: Vec<(Mono, Poly)>,
    /// Formal coordinates expanded only once a normal form is complete.
    pub deferred: Vec<(Sym, Poly)>,
    /// Closed forms of abbreviation symbols in terms of generators.
    pub abbreviations: Vec<(Sym, Poly)>,
    /// Coordinates and generators the system accepts in its input.
    pub alphabet: BTreeSet<Sym>,
}

impl RuleSystem {
    /// Clears negative abbreviation powers and expands abbreviations, giving a
    /// canonical numerator for the zero test.
    pub fn canonical_numerator(&self, c: &Poly) -> Poly {
        let m = c.min_monomial();
        let clear: Mono = m
            .iter()
            .filter(|(_, e)| *e < 0)
            .map(|&(s, e)| (s, -e))
            .collect();
        let mut p = c.mul_mono(&clear, &Rational::one());
        for (s, v) in &self.abbreviations {
            p = p.substitute(*s, v).expect("negative powers were cleared");
        }
        p
    }
}

/// Memoizing normal-form evaluator for one rule system.
pub struct Engine<'a> {
    system: &'a RuleSystem,
    var_nf: HashMap<Sym, Element>,
    pow_nf: HashMap<(Sym, i32), Element>,
    mono_nf: HashMap<Mono, Element>,
    applications: usize,
    limit: usize,
}

fn unit() -> Element {
    let mut e = Element::new();
    e.insert(Mono::new(), Poly::one());
    e
}

fn add_scaled(out: &mut Element, e: &Element, c: &Poly) {
    for (m, v) in e {
        let t = v.mul(c);
        if t.is_zero() {
            continue;
        }
        let slot = out.entry(m.clone()).or_default();
        slot.add_assign(&t);
        if slot.is_zero() {
            out.remove(m);
        }
    }
}

impl<'a> Engine<'a> {
    pub fn new(system: &'a RuleSystem, limit: usize) -> Self {
        Engine {
            system,
            var_nf: HashMap::new(),
            pow_nf: HashMap::new(),
            mono_nf: HashMap::new(),
            applications: 0,
            limit,
        }
    }

    /// Number of rule applications performed so far.
    pub fn applications(&self) -> usize {
        self.applications
    }

    fn fire(&mut self) -> Result<(), RewriteError> {
        self.applications += 1;
        if self.applications > self.limit {
            return Err(RewriteError::RuleLimit(self.limit));
        }
        Ok(())
    }

    /// Normal form of an arbitrary polynomial.
    pub fn normal_form(&mut self, p: &Poly) -> Result<Element, RewriteError> {
        let mut out = Element::new();
        for (m, c) in p.terms() {
            let (coord, gen) = mono_split(m);
            let e = self.coordinate_monomial(&coord)?;
            add_scaled(&mut out, &e, &Poly::term(gen, c.clone()));
        }
        Ok(out)
    }

    /// Normal form with every deferred formal coordinate expanded.
    pub fn reduce(&mut self, p: &Poly) -> Result<Element, RewriteError> {
        let mut nf = self.normal_form(p)?;
        for (sym, rhs) in &self.system.deferred {
            if !nf.keys().any(|m| m.iter().any(|(s, _)| s == sym)) {
                continue;
            }
            let mut out = Element::new();
            for (m, c) in nf {
                let e = m.iter().find(|(s, _)| s == sym).map_or(0, |&(_, e)| e);
                if e == 0 {
                    add_scaled(&mut out, &BTreeMap::from([(m, Poly::one())]), &c);
                    continue;
                }
                let rest: Mono = m.iter().copied().filter(|(s, _)| s != sym).collect();
                let expanded = rhs.pow(e as u32).mul_mono(&rest, &Rational::one());
                let r = self.normal_form(&expanded)?;
                add_scaled(&mut out, &r, &c);
            }
            nf = out;
        }
        Ok(nf)
    }

    fn coordinate_monomial(&mut self, m: &Mono) -> Result<Element, RewriteError> {
        let mut acc = unit();
        let mut rest = Mono::new();
        for &(s, e) in m {
            if e < 0 {
                return Err(RewriteError::NegativeCoordinatePower(s.to_string()));
            }
            if self.system.substitutions.contains_key(&s) {
                let f = self.var_power(s, e)?;
                acc = self.mul(&acc, &f)?;
            } else {
                rest.push((s, e));
            }
        }
        let r = self.reduce_monomial(&rest)?;
        self.mul(&acc, &r)
    }

    fn var_power(&mut self, s: Sym, e: i32) -> Result<Element, RewriteError> {
        if let Some(v) = self.pow_nf.get(&(s, e)) {
            return Ok(v.clone());
        }
        let v = if e == 1 {
            if let Some(v) = self.var_nf.get(&s) {
                v.clone()
            } else {
                self.fire()?;
                let rhs = self.system.substitutions[&s].clone();
                let v = self.normal_form(&rhs)?;
                self.var_nf.insert(s, v.clone());
                v
            }
        } else {
            let half = self.var_power(s, e / 2)?;
            let sq = self.mul(&half, &half)?;
            if e % 2 == 1 {
                let one = self.var_power(s, 1)?;
                self.mul(&sq, &one)?
            } else {
                sq
            }
        };
        self.pow_nf.insert((s, e), v.clone());
        Ok(v)
    }

    fn reduce_monomial(&mut self, m: &Mono) -> Result<Element, RewriteError> {
        if let Some(v) = self.mono_nf.get(m) {
            return Ok(v.clone());
        }
        let hit = self
            .system
            .reductions
            .iter()
            .find_map(|(lhs, rhs)| mono_div(m, lhs).map(|rest| (rest, rhs.clone())));
        let v = match hit {
            None => {
                let mut e = Element::new();
                e.insert(m.clone(), Poly::one());
                e
            }
            Some((rest, rhs)) => {
                self.fire()?;
                let r = self.normal_form(&rhs)?;
                let q = self.reduce_monomial(&rest)?;
                self.mul(&r, &q)?
            }
        };
        self.mono_nf.insert(m.clone(), v.clone());
        Ok(v)
    }

    /// Product in the quotient algebra.
    pub fn mul(&mut self, a: &Element, b: &Element) -> Result<Element, RewriteError> {
        let mut out = Element::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let c = ca.mul(cb);
                if c.is_zero() {
                    continue;
                }
                let prod = mono_mul(ma, mb);
                if prod.is_empty() || self.is_irreducible(&prod) {
                    let mut e = Element::new();
                    e.insert(prod, Poly::one());
                    add_scaled(&mut out, &e, &c);
                } else {
                    let r = self.reduce_monomial(&prod)?;
                    add_scaled(&mut out, &r, &c);
                }
            }
        }
        Ok(out)
    }

    fn is_irreducible(&self, m: &Mono) -> bool {
        self.system
            .reductions
            .iter()
            .all(|(lhs, _)| mono_div(m, lhs).is_none())
    }

    /// Splits a normal form into its constant coefficient and the coordinate-dependent rest,
    /// dropping coefficients that vanish once abbreviations are expanded.
    pub fn invariant_part(&self, e: &Element) -> (Poly, Element) {
        let mut residual = Element::new();
        let mut constant = Poly::zero();
        for (m, c) in e {
            if m.is_empty() {
                constant = c.clone();
            } else if !self.system.canonical_numerator(c).is_zero() {
                residual.insert(m.clone(), c.clone());
            }
        }
        (constant, residual)
    }
}

/// Flattens an element back into a polynomial over all symbols.
pub fn element_to_poly(e: &Element) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in e {
        out.add_assign(&c.mul_mono(m, &Rational::one()));
    }
    out
}
