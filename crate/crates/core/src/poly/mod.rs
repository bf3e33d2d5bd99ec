//! Exact homogeneous ternary forms over the rationals.
//!
//! A [`TernaryForm`] is a sparse map from exponent triples to nonzero
//! rational coefficients. The orthogonal group acts by substitution:
//! `g·v` replaces `x ↦ g11 x + g21 y + g31 z`, `y ↦ g12 x + g22 y + g32 z`,
//! `z ↦ g13 x + g23 y + g33 z`, so that `g1·(g2·v) = (g1 g2)·v`.

mod matrix;
mod numeric;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::expr::{self, Interpret};

pub use matrix::{Matrix3, SignedPermutation};
pub use numeric::{monomial_exponents, monomial_index, NumericForm};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integer [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rational::new(n, d)
        }
        None => expr::parse_decimal(body)?,
    };
    Some(if neg { -value } else { value })
}

/// Exact conversion of a finite double to a rational.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Nearest double to a rational.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()) as i64 - 900;
    if shift <= 0 {
        return f64::NAN;
    }
    let (n2, d2) = (n >> shift as usize, d >> shift as usize);
    n2.to_f64().unwrap_or(f64::NAN) / d2.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a [`Rational`] as a `"n/d"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| de::Error::custom(format!("invalid rational '{text}'")))
    }
}

/// Errors of the form layer.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("degree {found} is below the required {required}")]
    DegreeTooLow { found: u32, required: u32 },
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("malformed form: {0}")]
    Malformed(String),
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
}

/// Exponent triple `x^i y^j z^k`, ordered graded-lex with `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Exponent {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Exponent { i, j, k }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j + self.k
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.i, self.j, self.k]
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then(other.i.cmp(&self.i))
            .then(other.j.cmp(&self.j))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Homogeneous polynomial in `x, y, z` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<Exponent, Rational>,
}

impl TernaryForm {
    /// The zero form of the given degree.
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c·x^i y^j z^k`.
    pub fn monomial(i: u32, j: u32, k: u32, c: Rational) -> Self {
        let mut f = TernaryForm::zero(i + j + k);
        if !c.is_zero() {
            f.coeffs.insert(Exponent::new(i, j, k), c);
        }
        f
    }

    /// The constant form `c` of degree zero.
    pub fn constant(c: Rational) -> Self {
        TernaryForm::monomial(0, 0, 0, c)
    }

    /// `q = x² + y² + z²`.
    pub fn q() -> Self {
        let mut f = TernaryForm::zero(2);
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            f.coeffs
                .insert(Exponent::new(e[0], e[1], e[2]), Rational::one());
        }
        f
    }

    /// `q^n`.
    pub fn q_power(n: u32) -> Self {
        TernaryForm::q().pow(n)
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms(
        degree: u32,
        terms: impl IntoIterator<Item = ([u32; 3], Rational)>,
    ) -> Result<Self, PolyError> {
        let mut f = TernaryForm::zero(degree);
        for (e, c) in terms {
            let e = Exponent::new(e[0], e[1], e[2]);
            if e.degree() != degree {
                return Err(PolyError::DegreeMismatch(e.degree(), degree));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
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

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `x^i y^j z^k` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Rational {
        self.coeffs
            .get(&Exponent::new(i, j, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.coeffs.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether the form has no nonzero terms (the same as [`TernaryForm::is_zero`]).
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest exponent of `x` among the nonzero terms.
    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| e.i).max()
    }

    /// Exact sum; degrees must agree.
    pub fn try_add(&self, rhs: &TernaryForm) -> Result<Self, PolyError> {
        if self.degree != rhs.degree && !self.is_zero() && !rhs.is_zero() {
            return Err(PolyError::DegreeMismatch(self.degree, rhs.degree));
        }
        let mut out = if self.is_zero() && self.degree != rhs.degree {
            TernaryForm::zero(rhs.degree)
        } else {
            self.clone()
        };
        if rhs.is_zero() {
            return Ok(out);
        }
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    /// Exact difference; degrees must agree.
    pub fn try_sub(&self, rhs: &TernaryForm) -> Result<Self, PolyError> {
        self.try_add(&-rhs)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TernaryForm::zero(self.degree);
        }
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Product; degrees add.
    pub fn mul(&self, rhs: &TernaryForm) -> Self {
        let mut out = TernaryForm::zero(self.degree + rhs.degree);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(
                    Exponent::new(e1.i + e2.i, e1.j + e2.j, e1.k + e2.k),
                    c1 * c2,
                );
            }
        }
        out
    }

    /// `self^n`.
    pub fn pow(&self, n: u32) -> Self {
        expr::pow_by_squaring(
            self,
            n as u64,
            TernaryForm::constant(Rational::one()),
            |a, b| a.mul(b),
        )
    }

    /// `Δ = ∂²/∂x² + ∂²/∂y² + ∂²/∂z²`.
    pub fn laplacian(&self) -> Result<Self, PolyError> {
        if self.degree < 2 {
            return Err(PolyError::DegreeTooLow {
                found: self.degree,
                required: 2,
            });
        }
        let mut out = TernaryForm::zero(self.degree - 2);
        for (e, c) in &self.coeffs {
            let [i, j, k] = e.as_array();
            if i >= 2 {
                out.add_term(Exponent::new(i - 2, j, k), c * int((i * (i - 1)) as i64));
            }
            if j >= 2 {
                out.add_term(Exponent::new(i, j - 2, k), c * int((j * (j - 1)) as i64));
            }
            if k >= 2 {
                out.add_term(Exponent::new(i, j, k - 2), c * int((k * (k - 1)) as i64));
            }
        }
        Ok(out)
    }

    /// Apolar product `Σ i! j! k! a_{ijk} b_{ijk}`.
    pub fn apolar(&self, rhs: &TernaryForm) -> Result<Rational, PolyError> {
        if self.degree != rhs.degree {
            return Err(PolyError::DegreeMismatch(self.degree, rhs.degree));
        }
        let fact = factorials(self.degree);
        let mut acc = Rational::zero();
        for (e, a) in &self.coeffs {
            if let Some(b) = rhs.coeffs.get(e) {
                let w = &fact[e.i as usize] * &fact[e.j as usize] * &fact[e.k as usize];
                acc += a * b * Rational::from_integer(w);
            }
        }
        Ok(acc)
    }

    /// Value at a point in double precision.
    pub fn evaluate(&self, p: [f64; 3]) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                rational_to_f64(c)
                    * p[0].powi(e.i as i32)
                    * p[1].powi(e.j as i32)
                    * p[2].powi(e.k as i32)
            })
            .sum()
    }

    /// `g·v` for an exact orthogonal matrix.
    pub fn act(&self, g: &Matrix3<Rational>) -> Result<Self, PolyError> {
        if !g.is_orthogonal() {
            return Err(PolyError::NotOrthogonal);
        }
        Ok(self.act_unchecked(g))
    }

    /// `g·v` without the orthogonality check.
    pub fn act_unchecked(&self, g: &Matrix3<Rational>) -> Self {
        let n = self.degree as usize;
        // Column c of g gives the image of variable c.
        let images: Vec<TernaryForm> = (0..3)
            .map(|c| {
                TernaryForm::from_terms(
                    1,
                    (0..3).map(|r| {
                        let mut e = [0u32; 3];
                        e[r] = 1;
                        (e, g.m[r][c].clone())
                    }),
                )
                .expect("linear image has degree one")
            })
            .collect();
        let powers: Vec<Vec<TernaryForm>> = images
            .iter()
            .map(|l| {
                let mut p = vec![TernaryForm::constant(Rational::one())];
                for e in 1..=n {
                    let next = p[e - 1].mul(l);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = TernaryForm::zero(self.degree);
        for (e, c) in &self.coeffs {
            let t = powers[0][e.i as usize]
                .mul(&powers[1][e.j as usize])
                .mul(&powers[2][e.k as usize]);
            for (e2, c2) in t.coeffs {
                out.add_term(e2, c2 * c);
            }
        }
        out
    }

    /// Dense double-precision copy.
    pub fn to_numeric(&self) -> NumericForm {
        let mut f = NumericForm::zero(self.degree);
        for (e, c) in &self.coeffs {
            f.coeffs[monomial_index(self.degree, e.i, e.j)] = rational_to_f64(c);
        }
        f
    }

    /// Exact rational copy of a numeric form (each double is a dyadic rational).
    pub fn from_numeric(f: &NumericForm) -> Result<Self, PolyError> {
        let mut out = TernaryForm::zero(f.degree);
        for (idx, &c) in f.coeffs.iter().enumerate() {
            let r = rational_from_f64(c)
                .ok_or_else(|| PolyError::Malformed(format!("non-finite coefficient {c}")))?;
            let [i, j, k] = monomial_exponents(f.degree)[idx];
            out.add_term(Exponent::new(i, j, k), r);
        }
        Ok(out)
    }

    /// Parses text such as `"y^4 - 6*y^2*z^2 + z^4"` over the variables `x, y, z`.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        struct FormBuilder;
        impl Interpret for FormBuilder {
            type Value = BTreeMap<[u32; 3], Rational>;
            type Error = PolyError;
            fn number(&mut self, value: &Rational) -> Result<Self::Value, PolyError> {
                Ok(BTreeMap::from([([0, 0, 0], value.clone())]))
            }
            fn symbol(&mut self, name: &str, indices: &[u32]) -> Result<Self::Value, PolyError> {
                let e = match (name, indices.is_empty()) {
                    ("x", true) => [1, 0, 0],
                    ("y", true) => [0, 1, 0],
                    ("z", true) => [0, 0, 1],
                    _ => return Err(PolyError::Malformed(format!("unknown variable '{name}'"))),
                };
                Ok(BTreeMap::from([(e, Rational::one())]))
            }
            fn neg(&mut self, a: Self::Value) -> Result<Self::Value, PolyError> {
                Ok(a.into_iter().map(|(e, c)| (e, -c)).collect())
            }
            fn add(
                &mut self,
                mut a: Self::Value,
                b: Self::Value,
            ) -> Result<Self::Value, PolyError> {
                for (e, c) in b {
                    *a.entry(e).or_insert_with(Rational::zero) += c;
                }
                a.retain(|_, c| !c.is_zero());
                Ok(a)
            }
            fn sub(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, PolyError> {
                let nb = self.neg(b)?;
                self.add(a, nb)
            }
            fn mul(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, PolyError> {
                let mut out = BTreeMap::new();
                for (e1, c1) in &a {
                    for (e2, c2) in &b {
                        let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                        *out.entry(e).or_insert_with(Rational::zero) += c1 * c2;
                    }
                }
                out.retain(|_, c: &mut Rational| !c.is_zero());
                Ok(out)
            }
            fn div(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, PolyError> {
                match b.iter().next() {
                    Some((e, c)) if b.len() == 1 && *e == [0, 0, 0] => {
                        Ok(a.into_iter().map(|(e, v)| (e, v / c)).collect())
                    }
                    _ => Err(PolyError::Malformed("division by a non-constant".into())),
                }
            }
            fn pow(&mut self, a: Self::Value, exp: i64) -> Result<Self::Value, PolyError> {
                if exp < 0 {
                    return Err(PolyError::Malformed("negative exponent".into()));
                }
                let mut acc = BTreeMap::from([([0, 0, 0], Rational::one())]);
                for _ in 0..exp {
                    acc = self.mul(acc, a.clone())?;
                }
                Ok(acc)
            }
        }
        let terms = expr::parse(text)?.interpret(&mut FormBuilder)?;
        let mut degrees = terms.keys().map(|e| e[0] + e[1] + e[2]);
        let degree = degrees.next().unwrap_or(0);
        if degrees.any(|d| d != degree) {
            return Err(PolyError::Malformed("inhomogeneous polynomial".into()));
        }
        TernaryForm::from_terms(degree, terms)
    }

    /// Maximum absolute coefficient as a double.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| rational_to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    /// Rational `c` with `self = c·other`, if one exists and `other` is nonzero.
    pub fn ratio_to(&self, other: &TernaryForm) -> Option<Rational> {
        let (e, c) = other.coeffs.iter().next()?;
        let s = self.coeffs.get(e)? / c;
        (other.scale(&s) == *self && self.degree == other.degree).then_some(s)
    }
}

/// `0!, 1!, …, n!`.
pub fn factorials(n: u32) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n as u64 {
        let next = &f[f.len() - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

impl ops::Add<&TernaryForm> for &TernaryForm {
    type Output = TernaryForm;
    /// Panics on degree mismatch; use [`TernaryForm::try_add`] to handle it.
    fn add(self, rhs: &TernaryForm) -> TernaryForm {
        self.try_add(rhs).expect("degree mismatch in form addition")
    }
}

impl ops::Sub<&TernaryForm> for &TernaryForm {
    type Output = TernaryForm;
    /// Panics on degree mismatch; use [`TernaryForm::try_sub`] to handle it.
    fn sub(self, rhs: &TernaryForm) -> TernaryForm {
        self.try_sub(rhs)
            .expect("degree mismatch in form subtraction")
    }
}

impl ops::Neg for &TernaryForm {
    type Output = TernaryForm;
    fn neg(self) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl ops::Mul<&TernaryForm> for &TernaryForm {
    type Output = TernaryForm;
    fn mul(self, rhs: &TernaryForm) -> TernaryForm {
        TernaryForm::mul(self, rhs)
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (name, p) in [("x", e.i), ("y", e.j), ("z", e.k)] {
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for TernaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<Exponent, Rational>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    m.serialize_entry(&format!("{},{},{}", e.i, e.j, e.k), &c.to_string())?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("TernaryForm", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coefficients", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TernaryForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            degree: u32,
            coefficients: BTreeMap<String, serde_json::Value>,
        }
        let raw = Raw::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.coefficients.len());
        for (key, value) in raw.coefficients {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            let e: Vec<u32> = parts
                .iter()
                .map(|p| p.parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| de::Error::custom(format!("invalid exponent key '{key}'")))?;
            if e.len() != 3 {
                return Err(de::Error::custom(format!(
                    "exponent key '{key}' needs three entries"
                )));
            }
            let c = match &value {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                _ => None,
            }
            .ok_or_else(|| de::Error::custom(format!("invalid coefficient {value} for '{key}'")))?;
            terms.push(([e[0], e[1], e[2]], c));
        }
        TernaryForm::from_terms(raw.degree, terms).map_err(de::Error::custom)
    }
}
