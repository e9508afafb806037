//! Motivic zeta functions as exact rational functions in `T`.
//!
//! A zeta function is a finite sum of terms
//! `c · T^{b₀} · Π G(a, b)` with `G(a, b) = [A]^a T^b / (1 − [A]^a T^b)`,
//! `b > 0`, and `c` a Grothendieck-ring element (which absorbs any power of
//! `[A]` in the prefactor).  Points of a Γ-part become single geometric
//! atoms supported on a congruence class of `m`; open intervals become a
//! two-dimensional cone sum, written through its fundamental
//! parallelepiped.

use std::collections::BTreeMap;
use std::fmt;

use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Error, Result};
use crate::gamma_calc::GammaCell;
use crate::groth_core::{theta, Field, GrothElem, Summand, TensorElem};
use crate::milnor_calc::{milnor_integral_bounded, Sign};
use crate::newton_engine::LaurentPoly;
use crate::poly::UniPoly;
use crate::rational::{fmt_q, lcm_den, qi, to_i64, Q};
use crate::realize_maps::realize_real;

/// Geometric atom `G(a, b) = [A]^a T^b / (1 − [A]^a T^b)` with `b > 0`.
pub type GAtom = (i64, i64);

/// One term `coeff · T^{t_pow} · Π G(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaTerm {
    pub coeff: GrothElem,
    pub t_pow: i64,
    /// Sorted multiset of atoms.
    pub atoms: Vec<GAtom>,
}

/// A finite sum of [`ZetaTerm`]s in canonical form: atoms sorted, like
/// terms merged, zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "zeta")]
pub struct ZetaRat {
    pub terms: Vec<ZetaTerm>,
}

impl ZetaRat {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · T^{t_pow} · Π atoms`, validated.
    pub fn term(coeff: GrothElem, t_pow: i64, atoms: Vec<GAtom>) -> Result<Self> {
        if atoms.iter().any(|a| a.1 <= 0) {
            return unsupported("geometric atoms need a positive T-exponent");
        }
        Ok(Self::from_terms(vec![ZetaTerm { coeff, t_pow, atoms }]))
    }

    /// The single atom `G(a, b)`.
    pub fn atom(a: i64, b: i64) -> Result<Self> {
        Self::term(GrothElem::one(), 0, vec![(a, b)])
    }

    fn from_terms(terms: Vec<ZetaTerm>) -> Self {
        let mut merged: BTreeMap<(i64, Vec<GAtom>), GrothElem> = BTreeMap::new();
        for mut t in terms {
            t.atoms.sort_unstable();
            let e = merged.entry((t.t_pow, t.atoms)).or_default();
            *e = e.add(&t.coeff);
        }
        ZetaRat {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((t_pow, atoms), coeff)| ZetaTerm { coeff, t_pow, atoms })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ZetaRat) -> ZetaRat {
        Self::from_terms(self.terms.iter().chain(&o.terms).cloned().collect())
    }

    pub fn neg(&self) -> ZetaRat {
        self.map_coeffs(|c| c.neg())
    }

    pub fn map_coeffs(&self, f: impl Fn(&GrothElem) -> GrothElem) -> ZetaRat {
        Self::from_terms(
            self.terms.iter().map(|t| ZetaTerm { coeff: f(&t.coeff), ..t.clone() }).collect(),
        )
    }
}

impl fmt::Display for ZetaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut factors = Vec::new();
                if t.coeff.as_int() != Some(1) || (t.t_pow == 0 && t.atoms.is_empty()) {
                    factors.push(format!("({})", t.coeff));
                }
                if t.t_pow != 0 {
                    factors.push(format!("T^{}", t.t_pow));
                }
                factors.extend(t.atoms.iter().map(|(a, b)| format!("G({a},{b})")));
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ----- construction from tensor elements -----

fn cell_point(cell: &GammaCell) -> Result<Vec<Q>> {
    (0..cell.ambient_dim())
        .map(|i| match cell.coordinate_range(i) {
            (Some((lo, true)), Some((hi, true))) if lo == hi => Ok(lo),
            _ => Err(Error::Internal("zero-dimensional cell without a unique point".into())),
        })
        .collect()
}

/// Primitive integer vector along `(1, x)`.
fn primitive_ray(x: &Q) -> (i64, i64) {
    let d = to_i64(&qi(1).max(Q::from_integer(x.denom().clone()))).expect("small denominator");
    (d, to_i64(&Q::from_integer(x.numer().clone())).expect("small numerator"))
}

/// Lattice points `p = s·r1 + t·r2` with `s, t ∈ (0, 1]`.
fn half_open_parallelepiped(r1: (i64, i64), r2: (i64, i64)) -> Vec<(i64, i64)> {
    let det = r1.0 * r2.1 - r2.0 * r1.1;
    let xs = [0, r1.0, r2.0, r1.0 + r2.0];
    let ys = [0, r1.1, r2.1, r1.1 + r2.1];
    let mut pts = Vec::new();
    for j in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for i in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            let s = Q::new((j * r2.1 - i * r2.0).into(), det.into());
            let t = Q::new((r1.0 * i - r1.1 * j).into(), det.into());
            if s.is_positive() && s <= Q::one() && t.is_positive() && t <= Q::one() {
                pts.push((j, i));
            }
        }
    }
    pts
}

fn summand_zeta(s: &Summand) -> Result<ZetaRat> {
    let weight = s.res.mul(&GrothElem::gm().pow(s.l() as u32));
    let mut out = ZetaRat::zero();
    for cell in s.gamma.cells() {
        match cell.dim() {
            0 => {
                let p = cell_point(cell)?;
                let q = lcm_den(s.res_vals.iter().chain(&p)) as i64;
                let sv = s.sigma.eval(&p) * qi(q);
                let a = to_i64(&sv).ok_or_else(|| {
                    Error::Unsupported(format!("volume form value {} not integral on the lattice", fmt_q(&sv)))
                })?;
                out = out.add(&ZetaRat::term(weight.clone(), 0, vec![(-a, q)])?);
            }
            1 if s.l() == 1 => {
                let (lo, hi) = cell.coordinate_range(0);
                let (Some((lo, _)), Some((hi, _))) = (lo, hi) else {
                    return unsupported("zeta of an unbounded Γ-part (use the bounded integral form)");
                };
                let c = to_i64(&s.sigma.coeffs[0]).expect("integral volume form");
                let s0 = s.sigma.constant.clone();
                let d = (lcm_den(&s.res_vals) as i64).lcm(&(lcm_den([&s0]) as i64));
                // Points (j, i) of the open cone: γ = i/(dj), m = dj.
                let dq = qi(d);
                let r1 = primitive_ray(&(&lo * &dq));
                let r2 = primitive_ray(&(&hi * &dq));
                let ds0 = to_i64(&(&s0 * &dq)).expect("d clears the constant");
                let mono = |(j, i): (i64, i64)| (-(ds0 * j + c * i), d * j);
                for p in half_open_parallelepiped(r1, r2) {
                    let base = mono((p.0 - r1.0 - r2.0, p.1 - r1.1 - r2.1));
                    let coeff = weight.shift_a(base.0);
                    out = out.add(&ZetaRat::term(coeff, base.1, vec![mono(r1), mono(r2)])?);
                }
            }
            _ => return unsupported("zeta of a Γ-part of dimension ≥ 2"),
        }
    }
    Ok(out)
}

/// `Σ_{m ≥ 1} η(h_m(t)) T^m` in closed form.
pub fn zeta_from_tensor(t: &TensorElem) -> Result<ZetaRat> {
    let mut z = ZetaRat::zero();
    for s in &t.summands {
        z = z.add(&summand_zeta(s)?);
    }
    Ok(z)
}

/// The motivic zeta function of `f`, with the tag twist applied to its
/// coefficients, so that `−lim_{T→∞}` is the motivic Milnor fiber.
pub fn motivic_zeta(f: &LaurentPoly, field: Field, sign: Sign) -> Result<ZetaRat> {
    Ok(zeta_from_tensor(&milnor_integral_bounded(f, field, sign)?)?.map_coeffs(theta))
}

// ----- coefficients, limits, products -----

/// Exact `T^m`-coefficient.
pub fn coeff(z: &ZetaRat, m: i64) -> GrothElem {
    fn expand(atoms: &[GAtom], rest: i64, a_acc: i64, c: &GrothElem, out: &mut GrothElem) {
        match atoms.split_first() {
            None => {
                if rest == 0 {
                    *out = out.add(&c.shift_a(a_acc));
                }
            }
            Some((&(a, b), tail)) => {
                let mut n = 1;
                while n * b <= rest {
                    expand(tail, rest - n * b, a_acc + n * a, c, out);
                    n += 1;
                }
            }
        }
    }
    let mut out = GrothElem::zero();
    for t in &z.terms {
        expand(&t.atoms, m - t.t_pow, 0, &t.coeff, &mut out);
    }
    out
}

/// `lim_{T→∞}`: every atom tends to `−1`, negative powers of `T` to `0`.
pub fn limit_t_inf(z: &ZetaRat) -> Result<GrothElem> {
    let mut r = GrothElem::zero();
    for t in &z.terms {
        match t.t_pow.signum() {
            1 => return unsupported("limit undefined: bare positive power of T"),
            0 => {
                let sign = if t.atoms.len() % 2 == 0 { 1 } else { -1 };
                r = r.add(&t.coeff.scale(sign));
            }
            _ => {}
        }
    }
    Ok(r)
}

/// Coefficientwise (Hadamard) product.  Closed form for sums of single
/// atoms: `G(a₁,b₁) ⊛ G(a₂,b₂) = G(L·a₁/b₁ + L·a₂/b₂, L)` with
/// `L = lcm(b₁, b₂)`; the coefficient rings multiply.
pub fn hadamard(z1: &ZetaRat, z2: &ZetaRat) -> Result<ZetaRat> {
    let mut out = ZetaRat::zero();
    for t1 in &z1.terms {
        for t2 in &z2.terms {
            let (&[(a1, b1)], &[(a2, b2)]) = (t1.atoms.as_slice(), t2.atoms.as_slice()) else {
                return unsupported("Hadamard product is implemented for sums of single geometric atoms");
            };
            if t1.t_pow != 0 || t2.t_pow != 0 {
                return unsupported("Hadamard product is implemented for atoms without a T-prefactor");
            }
            let l = b1.lcm(&b2);
            let a = l / b1 * a1 + l / b2 * a2;
            out = out.add(&ZetaRat::term(t1.coeff.mul(&t2.coeff), 0, vec![(a, l)])?);
        }
    }
    Ok(out)
}

/// Check `coeff(z1 ⊛ z2, m) = coeff(z1, m)·coeff(z2, m)` for `1 ≤ m ≤ order`.
pub fn hadamard_truncation_agrees(z1: &ZetaRat, z2: &ZetaRat, order: i64) -> Result<bool> {
    let h = hadamard(z1, z2)?;
    Ok((1..=order).all(|m| coeff(&h, m) == coeff(z1, m).mul(&coeff(z2, m))))
}

// ----- topological zeta -----

/// Rational function over `Q` in `T`, reduced, with the lowest nonzero
/// coefficient of the denominator normalized to `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFn {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RatFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::Internal("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: UniPoly::one() });
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let low = den.coeffs().iter().find(|c| !c.is_zero()).cloned().expect("nonzero");
        let inv = Q::one() / low;
        Ok(RatFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn add(&self, o: &RatFn) -> Result<RatFn> {
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    /// `lim_{T→∞}`, when finite.
    pub fn limit_inf(&self) -> Result<Q> {
        let (dn, dd) = (self.num.degree(), self.den.degree().unwrap_or(0));
        match dn {
            None => Ok(Q::zero()),
            Some(n) if n < dd => Ok(Q::zero()),
            Some(n) if n == dd => Ok(self.num.lead() / self.den.lead()),
            _ => unsupported("limit undefined: numerator degree exceeds denominator degree"),
        }
    }

    /// Taylor coefficient of `T^m` (the denominator has nonzero constant term).
    pub fn series_coeff(&self, m: usize) -> Result<Q> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return unsupported("series expansion needs a denominator with nonzero constant term");
        }
        let mut s: Vec<Q> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut v = self.num.coeff(k);
            for j in 1..=k {
                v -= self.den.coeff(j) * &s[k - j];
            }
            s.push(v / &d0);
        }
        Ok(s[m].clone())
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num.render("T"))
        } else {
            write!(f, "({})/({})", self.num.render("T"), self.den.render("T"))
        }
    }
}

fn t_power(k: i64) -> RatFn {
    let mono = UniPoly::monomial(Q::one(), k.unsigned_abs() as usize);
    if k >= 0 {
        RatFn { num: mono, den: UniPoly::one() }
    } else {
        RatFn { num: UniPoly::one(), den: mono }
    }
}

/// Realize a zeta function with `[A] ↦ −1` on its coefficients.
pub fn realize_zeta_real(z: &ZetaRat) -> Result<RatFn> {
    let mut acc = RatFn::new(UniPoly::zero(), UniPoly::one())?;
    for t in &z.terms {
        let c = qi(realize_real(&t.coeff)?);
        let mut term = t_power(t.t_pow);
        term.num = term.num.scale(&c);
        for &(a, b) in &t.atoms {
            let x = UniPoly::monomial(qi(if a.is_even() { 1 } else { -1 }), b as usize);
            let g = RatFn::new(x.clone(), UniPoly::one().sub(&x))?;
            term = RatFn::new(term.num.mul(&g.num), term.den.mul(&g.den))?;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Topological zeta function of `f` over the reals.
pub fn topological_zeta(f: &LaurentPoly, sign: Sign) -> Result<RatFn> {
    realize_zeta_real(&motivic_zeta(f, Field::R, sign)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groth_core::eta_hm;
    use crate::milnor_calc::motivic_fiber_b;
    use crate::newton_engine::LaurentPoly;

    fn p(t: &[((i64, i64), i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    #[test]
    fn smooth_point() {
        let z = motivic_zeta(&p(&[((1, 0), 1)]), Field::C, Sign::Plus).unwrap();
        assert_eq!(z, ZetaRat::atom(-1, 1).unwrap());
        assert_eq!(coeff(&z, 5), GrothElem::a_pow(-5));
        assert_eq!(limit_t_inf(&z).unwrap().neg(), GrothElem::one());
        let top = topological_zeta(&p(&[((1, 0), 1)]), Sign::Plus).unwrap();
        assert_eq!(top.to_string(), "(-T)/(T+1)");
    }

    #[test]
    fn closed_form_matches_enumeration() {
        let fs = [
            p(&[((6, 0), 1), ((2, 2), 1), ((0, 6), 1)]),
            p(&[((2, 0), 1), ((0, 3), 1)]),
            p(&[((3, 2), 1)]),
            p(&[((1, 1), 1)]),
            p(&[((4, 0), 1), ((0, 5), -1)]),
        ];
        for f in &fs {
            for field in [Field::C, Field::R] {
                let t = milnor_integral_bounded(f, field, Sign::Plus).unwrap();
                let z = zeta_from_tensor(&t).unwrap();
                for m in 1..=20 {
                    assert_eq!(coeff(&z, m), eta_hm(&t, m as u64).unwrap(), "{f:?} m={m}");
                }
                let lim = limit_t_inf(&z.map_coeffs(theta)).unwrap().neg();
                assert_eq!(lim, motivic_fiber_b(f, field, Sign::Plus).unwrap());
            }
        }
    }

    #[test]
    fn limits() {
        assert!(limit_t_inf(&ZetaRat::term(GrothElem::one(), 2, vec![]).unwrap()).is_err());
        assert_eq!(limit_t_inf(&ZetaRat::term(GrothElem::one(), -1, vec![(0, 1)]).unwrap()).unwrap(), GrothElem::zero());
        let two = ZetaRat::term(GrothElem::one(), 0, vec![(0, 1), (-1, 2)]).unwrap();
        assert_eq!(limit_t_inf(&two).unwrap(), GrothElem::one());
        assert_eq!(limit_t_inf(&ZetaRat::zero()).unwrap(), GrothElem::zero());
        assert_eq!(coeff(&ZetaRat::zero(), 3), GrothElem::zero());
    }

    #[test]
    fn hadamard_products() {
        let g01 = ZetaRat::atom(0, 1).unwrap();
        assert_eq!(hadamard(&g01, &g01).unwrap(), g01);
        let h = hadamard(&ZetaRat::atom(-1, 1).unwrap(), &ZetaRat::atom(0, 2).unwrap()).unwrap();
        assert_eq!(h, ZetaRat::atom(-2, 2).unwrap());
        assert!(hadamard_truncation_agrees(&ZetaRat::atom(-1, 1).unwrap(), &ZetaRat::atom(0, 2).unwrap(), 20).unwrap());
        assert!(hadamard(&g01, &ZetaRat::zero()).unwrap().is_zero());
        let prod = hadamard(&ZetaRat::atom(-1, 2).unwrap(), &ZetaRat::atom(3, 3).unwrap()).unwrap();
        assert_eq!(limit_t_inf(&prod).unwrap(), GrothElem::from_int(-1));
    }

    #[test]
    fn topological_monomials() {
        for (a, b) in [(1, 1), (2, 1), (2, 2), (3, 4), (4, 2)] {
            let top = topological_zeta(&p(&[((a, b), 1)]), Sign::Plus).unwrap();
            let m = num::integer::gcd(a, b);
            let mp = if m % 2 == 0 { 2 } else { 1 };
            assert_eq!(-top.limit_inf().unwrap(), qi(2 * mp), "x^{a}y^{b}");
        }
    }

    #[test]
    fn json_round_trip() {
        let z = motivic_zeta(&p(&[((2, 0), 1), ((0, 3), 1)]), Field::R, Sign::Plus).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(serde_json::from_str::<ZetaRat>(&s).unwrap(), z);
    }
}
