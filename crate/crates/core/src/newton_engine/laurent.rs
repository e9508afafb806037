//! Bivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::UniPoly;
use crate::rational::{fmt_q, parse_q, Q};

/// `Σ c_{ij} x^i y^j` with finitely many nonzero `c_{ij}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: i64, j: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), Q)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[((i64, i64), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, Q::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, e: (i64, i64), c: Q) {
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Q> {
        &self.terms
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
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

    /// Whether all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i >= 0 && j >= 0)
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Q) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * s)))
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                p.add_term((i + k, j + l), a * b);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        (0..n).fold(Self::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, ((i, j), c)| acc + c * pow_q(x, *i) * pow_q(y, *j))
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap_xy(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// Keep the terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn((i64, i64)) -> bool) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().filter(|(e, _)| keep(**e)).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// The univariate polynomial obtained by fixing `y = y0` (exponents of
    /// `x` must be nonnegative).
    pub fn at_y(&self, y0: &Q) -> UniPoly {
        let deg = self.terms.keys().map(|e| e.0).max().unwrap_or(0).max(0) as usize;
        let mut c = vec![Q::zero(); deg + 1];
        for ((i, j), a) in &self.terms {
            c[*i as usize] += a * pow_q(y0, *j);
        }
        UniPoly::new(c)
    }

    /// The univariate polynomial obtained by fixing `x = x0`.
    pub fn at_x(&self, x0: &Q) -> UniPoly {
        self.swap_xy().at_y(x0)
    }

    /// Render with the given variable names; no `*` between factors.
    pub fn render(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&(i64, i64)> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        let mut out = String::new();
        for e in keys {
            let c = &self.terms[e];
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mut mono = String::new();
            for (v, k) in [(vx, e.0), (vy, e.1)] {
                match k {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&format!("{v}^{k}")),
                }
            }
            let a = c.abs();
            if !a.is_one() || mono.is_empty() {
                out.push_str(&fmt_q(&a));
            }
            out.push_str(&mono);
        }
        out
    }
}

pub(crate) fn pow_q(x: &Q, k: i64) -> Q {
    if k >= 0 {
        num::pow::pow(x.clone(), k as usize)
    } else {
        Q::one() / num::pow::pow(x.clone(), (-k) as usize)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "y"))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr(i64, i64, String);

/// Serialized as a list of `[i, j, "coefficient"]` triples.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self.terms.iter().map(|(&(i, j), c)| TermRepr(i, j, fmt_q(c))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<TermRepr> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for TermRepr(i, j, c) in v {
            let c = parse_q(&c).ok_or_else(|| serde::de::Error::custom("bad rational coefficient"))?;
            p.add_term((i, j), c);
        }
        Ok(p)
    }
}
