//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::symbols::Sym;
use crate::poly::Rational;

/// A monomial as `(symbol, exponent)` pairs sorted by symbol, exponents nonzero.
pub type Mono = SmallVec<[(Sym, i32); 4]>;

/// Product of two monomials.
pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = Mono::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let e = a[i].1 + b[j].1;
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a / b` when every exponent of `b` is at most the matching exponent of `a`.
pub fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out: Mono = a.clone();
    for &(s, e) in b {
        let pos = out.iter().position(|(t, _)| *t == s)?;
        if out[pos].1 < e {
            return None;
        }
        out[pos].1 -= e;
        if out[pos].1 == 0 {
            out.remove(pos);
        }
    }
    Some(out)
}

/// Splits a monomial into its coordinate part and its generator part.
pub fn mono_split(m: &Mono) -> (Mono, Mono) {
    m.iter().copied().partition(|(s, _)| s.is_coordinate())
}

fn mono_degree(m: &Mono) -> i64 {
    m.iter().map(|(_, e)| *e as i64).sum()
}

/// Graded lexicographic order: higher total degree first, then the larger
/// exponent of the earliest symbol where the monomials differ.
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    mono_degree(b).cmp(&mono_degree(a)).then_with(|| {
        let (mut i, mut j) = (0, 0);
        loop {
            let x = a.get(i);
            let y = b.get(j);
            match (x, y) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => {
                    return if e > 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
                (None, Some(&(_, f))) => {
                    return if f > 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
                (Some(&(s, e)), Some(&(t, f))) => {
                    if s < t {
                        return if e > 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                    if t < s {
                        return if f > 0 {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    if e != f {
                        return f.cmp(&e);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    })
}

/// A Laurent polynomial `Σ c_m m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Mono::new(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn var(s: Sym) -> Self {
        Poly::var_pow(s, 1)
    }

    pub fn var_pow(s: Sym, e: i32) -> Self {
        let mut m = Mono::new();
        if e != 0 {
            m.push((s, e));
        }
        Poly::term(m, Rational::one())
    }

    pub fn term(m: Mono, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// The value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::new()).cloned(),
            _ => None,
        }
    }

    /// The single term if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Mono, &Rational)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, v)| (mono_mul(n, m), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(mono_mul(m, n), c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// All symbols occurring with a nonzero exponent.
    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(s, _)| *s))
            .collect()
    }

    /// The monomial whose exponent in each symbol is the minimum over all terms
    /// (zero for symbols missing from some term).
    pub fn min_monomial(&self) -> Mono {
        let syms = self.symbols();
        syms.into_iter()
            .filter_map(|s| {
                let e = self
                    .terms
                    .keys()
                    .map(|m| {
                        m.iter()
                            .find(|(t, _)| *t == s)
                            .map(|(_, e)| *e)
                            .unwrap_or(0)
                    })
                    .min()
                    .unwrap_or(0);
                (e != 0).then_some((s, e))
            })
            .collect()
    }

    /// Substitutes `s ↦ value` for nonnegative powers of `s`.
    pub fn substitute(&self, s: Sym, value: &Poly) -> Option<Poly> {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m
                .iter()
                .find(|(t, _)| *t == s)
                .map(|(_, e)| *e)
                .unwrap_or(0);
            if e < 0 {
                return None;
            }
            while powers.len() <= e as usize {
                let next = powers.last().expect("nonempty").mul(value);
                powers.push(next);
            }
            let rest: Mono = m.iter().filter(|(t, _)| *t != s).cloned().collect();
            out.add_assign(&powers[e as usize].mul_mono(&rest, c));
        }
        Some(out)
    }

    /// Exact evaluation; `value` supplies each symbol, and `None` marks a missing symbol.
    pub fn evaluate(
        &self,
        value: &mut dyn FnMut(Sym) -> Option<Rational>,
    ) -> Result<Rational, EvalError> {
        let mut out = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(s, e) in m {
                let v = value(s).ok_or(EvalError::Unbound(s))?;
                if e < 0 && v.is_zero() {
                    return Err(EvalError::Pole(s));
                }
                t *= v.pow(e);
            }
            out += t;
        }
        Ok(out)
    }

    /// Gcd of the integer numerators over lcm of denominators, with the sign of the leading term.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        let mut out = Rational::new(num, den);
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            out = -out;
        }
        out
    }

    /// The term that prints first.
    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.sorted_terms().into_iter().next()
    }

    fn sorted_terms(&self) -> Vec<(&Mono, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| grlex(a, b));
        v
    }

    /// Relabels symbols: `s ↦ ±s'` as given by `f`.
    pub fn map_symbols(&self, f: &dyn Fn(Sym) -> (Sym, i8)) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut sign = 1i32;
            let mut n: Mono = m
                .iter()
                .map(|&(s, e)| {
                    let (t, g) = f(s);
                    if g < 0 && e % 2 != 0 {
                        sign = -sign;
                    }
                    (t, e)
                })
                .collect();
            n.sort_by_key(|(s, _)| *s);
            out.add_term(n, c * Rational::from_integer(sign.into()));
        }
        out
    }

    /// `self / d` when the division is exact, for polynomials without negative powers.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lead_m, lead_c) = d.leading()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let t = mono_div(m, &lead_m)?;
            if t.iter().any(|(_, e)| *e < 0) {
                return None;
            }
            let coef = c / &lead_c;
            rem = rem.sub(&d.mul_mono(&t, &coef));
            q.add_term(t, coef);
        }
        Some(q)
    }
}

/// Failure of exact evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value for symbol {0}")]
    Unbound(Sym),
    #[error("symbol {0} is zero in a denominator")]
    Pole(Sym),
    #[error("denominator evaluates to zero")]
    ZeroDenominator,
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut first = true;
            if !a.is_one() || m.is_empty() {
                write!(f, "{a}")?;
                first = false;
            }
            for (s, e) in m {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if *e == 1 {
                    write!(f, "{s}")?;
                } else if *e < 0 {
                    write!(f, "{s}^({e})")?;
                } else {
                    write!(f, "{s}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn a(i: u8) -> Poly {
        Poly::var(Sym::A(i))
    }

    #[test]
    fn arithmetic_and_display() {
        let p = a(1).add(&a(2)).pow(2);
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "a1^2 + 2 a1 a2 + a2^2");
        let q = p.sub(&a(1).mul(&a(1)));
        assert_eq!(q.to_string(), "2 a1 a2 + a2^2");
        let r = Poly::var_pow(Sym::P(2, 0), -1).scale(&rat(-3, 2));
        assert_eq!(r.to_string(), "-3/2 P[2][0]^(-1)");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn laurent_cancellation() {
        let p = Poly::var_pow(Sym::D2, -2).mul(&Poly::var_pow(Sym::D2, 2));
        assert_eq!(p, Poly::one());
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = a(1).pow(3).add(&a(2));
        let s = p.substitute(Sym::A(1), &a(2).add(&Poly::one())).unwrap();
        let v = s.evaluate(&mut |_| Some(int(2))).unwrap();
        assert_eq!(v, int(29));
        let inv = Poly::var_pow(Sym::A(1), -1);
        assert_eq!(
            inv.evaluate(&mut |_| Some(int(0))),
            Err(EvalError::Pole(Sym::A(1)))
        );
    }

    #[test]
    fn min_monomial_and_division() {
        let p = Poly::term(
            [(Sym::A(1), 2), (Sym::D2, -1)].into_iter().collect(),
            int(1),
        )
        .add(&Poly::term(
            [(Sym::A(1), 1), (Sym::P(2, 0), -2)].into_iter().collect(),
            int(1),
        ));
        let m = p.min_monomial();
        let want: Mono = [(Sym::A(1), 1), (Sym::P(2, 0), -2), (Sym::D2, -1)]
            .into_iter()
            .collect();
        assert_eq!(m, want);
        let x: Mono = [(Sym::A(2), 3)].into_iter().collect();
        let y: Mono = [(Sym::A(2), 1)].into_iter().collect();
        assert_eq!(
            mono_div(&x, &y),
            Some([(Sym::A(2), 2)].into_iter().collect())
        );
        assert_eq!(mono_div(&y, &x), None);
    }
}
