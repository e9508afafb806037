//! Univariate polynomials with exact rational coefficients: Euclidean
//! arithmetic, squarefree parts and Sturm-sequence real-root counting.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, parse_q, qi, Q};

/// Dense polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `c · s^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Q) -> UniPoly {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut qv = vec![Q::zero(); r.len() - dd];
        let lead = d.lead();
        for k in (0..qv.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            qv[k] = c;
        }
        (Self::new(qv), Self::new(r))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    pub fn derivative(&self) -> UniPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * qi(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn is_squarefree(&self) -> bool {
        UniPoly::gcd(self, &self.derivative()).degree() == Some(0)
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&UniPoly::gcd(self, &self.derivative())).0
    }

    /// Divide out the largest power of `s` dividing the polynomial.
    pub fn strip_zero_root(&self) -> UniPoly {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        UniPoly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        Self::new(ints.into_iter().map(|c| Q::from_integer(c * &sign / &content)).collect())
    }

    /// `s^deg · p(1/s)`.
    pub fn reversed(&self) -> UniPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
            chain.push(r);
        }
        chain.pop();
        chain
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`,
    /// with `None` standing for `∓∞`.
    pub fn count_real_roots(&self, a: Option<&Q>, b: Option<&Q>) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let changes = |at: Option<&Q>, plus_inf: bool| -> usize {
            let signs: Vec<i32> = chain
                .iter()
                .map(|p| {
                    let v = match at {
                        Some(x) => p.eval(x),
                        None => {
                            let deg = p.degree().unwrap_or(0);
                            let l = p.lead();
                            if plus_inf || deg % 2 == 0 {
                                l
                            } else {
                                -l
                            }
                        }
                    };
                    sgn(&v)
                })
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let va = changes(a, false);
        let vb = changes(b, true);
        va.saturating_sub(vb)
    }

    /// Number of distinct nonzero real roots.
    pub fn count_nonzero_real_roots(&self) -> usize {
        let p = self.strip_zero_root();
        let zero = Q::zero();
        p.count_real_roots(None, Some(&zero)) + p.count_real_roots(Some(&zero), None)
    }

    /// Number of connected components of `{s > 0 : p(s) > 0}` (when
    /// `positive_half`) or of `{s < 0 : p(s) > 0}`.
    pub fn positive_components(&self, positive_half: bool) -> usize {
        if self.is_zero() {
            return 0;
        }
        let p = if positive_half { self.clone() } else { self.compose_neg() };
        let sf = p.squarefree_part().strip_zero_root();
        if sf.degree().unwrap_or(0) == 0 {
            // No positive roots: the sign is constant on (0, ∞).
            return usize::from(sgn(&p.eval(&Q::one())) > 0);
        }
        let (lo, hi) = sf.root_bounds();
        let mut samples = vec![lo.clone()];
        for (c, d) in isolate(&sf, &lo, &hi) {
            samples.push(c);
            samples.push(d);
        }
        samples.push(hi);
        // Gap signs: before the first root, between consecutive roots, after the last.
        let mut gaps = vec![samples[0].clone()];
        let roots = (samples.len() - 2) / 2;
        for i in 0..roots {
            gaps.push(samples[2 + 2 * i].clone());
        }
        gaps.into_iter().filter(|x| sgn(&p.eval(x)) > 0).count()
    }

    /// `p(−s)`.
    pub fn compose_neg(&self) -> UniPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Rational `(lo, hi)` with `0 < lo < |r| < hi` for every nonzero root `r`
    /// of a polynomial with nonzero constant term.
    fn root_bounds(&self) -> (Q, Q) {
        let lead = self.lead().abs();
        let c0 = self.coeff(0).abs();
        let max_hi = self.coeffs.iter().map(|c| c.abs() / &lead).max().unwrap();
        let max_lo = self.coeffs.iter().map(|c| c.abs() / &c0).max().unwrap();
        let hi = (Q::one() + max_hi) * qi(2);
        let lo = Q::one() / ((Q::one() + max_lo) * qi(2));
        (lo, hi)
    }

    /// Render in the variable `var`, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if a.is_one() && k > 0 {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_q(&a));
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("s"))
    }
}

/// Serialized as the list of coefficient strings, lowest degree first.
impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(fmt_q).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let c: Option<Vec<Q>> = v.iter().map(|s| parse_q(s)).collect();
        c.map(UniPoly::new).ok_or_else(|| serde::de::Error::custom("bad rational coefficient"))
    }
}

pub(crate) fn sgn(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Disjoint open intervals `(c, d)` in `(a, b)`, endpoints non-roots, each
/// containing exactly one root of the squarefree `p`; sorted.
fn isolate(p: &UniPoly, a: &Q, b: &Q) -> Vec<(Q, Q)> {
    let n = p.count_real_roots(Some(a), Some(b));
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![(a.clone(), b.clone())];
    }
    let width = b - a;
    let mut k = 2i64;
    let mid = loop {
        let m = a + &width / qi(k);
        if !p.eval(&m).is_zero() {
            break m;
        }
        k += 1;
    };
    let mut out = isolate(p, a, &mid);
    out.extend(isolate(p, &mid, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn euclid_and_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // s^2 - 1
        let b = UniPoly::from_ints(&[1, 1]); // s + 1
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(UniPoly::gcd(&a, &UniPoly::from_ints(&[-1, 1])), UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn squarefree() {
        let p = UniPoly::from_ints(&[1, 2, 1]); // (s+1)^2
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part().monic(), UniPoly::from_ints(&[1, 1]));
        assert!(UniPoly::from_ints(&[1, 0, 1]).is_squarefree());
    }

    #[test]
    fn sturm_counts() {
        // (s-1)(s-2)(s+3) = s^3 - 7s + 6
        let p = UniPoly::from_ints(&[6, -7, 0, 1]);
        assert_eq!(p.count_real_roots(None, None), 3);
        assert_eq!(p.count_real_roots(Some(&q(0, 1)), None), 2);
        assert_eq!(p.count_nonzero_real_roots(), 3);
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).count_real_roots(None, None), 0);
        // s^3 + s has only the zero root
        assert_eq!(UniPoly::from_ints(&[0, 1, 0, 1]).count_nonzero_real_roots(), 0);
    }

    #[test]
    fn components_of_positivity() {
        // 1 + s^2 > 0 everywhere
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).positive_components(true), 1);
        // (s-1)(s-2): positive on (0,1) and (2,∞)
        assert_eq!(UniPoly::from_ints(&[2, -3, 1]).positive_components(true), 2);
        assert_eq!(UniPoly::from_ints(&[2, -3, 1]).positive_components(false), 1);
        // (s-1)^2 touches zero: (0,1) and (1,∞) are separate components
        assert_eq!(UniPoly::from_ints(&[1, -2, 1]).positive_components(true), 2);
        // -1 - s^2 < 0
        assert_eq!(UniPoly::from_ints(&[-1, 0, -1]).positive_components(false), 0);
    }

    #[test]
    fn primitive_form() {
        let p = UniPoly::new(vec![q(-1, 2), q(0, 1), q(-3, 4)]);
        assert_eq!(p.primitive(), UniPoly::from_ints(&[2, 0, 3]));
        assert_eq!(UniPoly::from_ints(&[1, 0, -1]).render("s"), "-s^2+1");
    }
}
