//! Tensor elements `RES ⊗ Γ`, the retractions `E_b`, `E_g`, the
//! specialisation `h_m` to Laurent polynomials in `T`, and `η`.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use super::elem::GrothElem;
use crate::error::{unsupported, Error, Result};
use crate::gamma_calc::{chi_b, chi_g, make_interval, Affine, GammaSet};
use crate::rational::{fmt_q, in_lattice, qi, to_i64, Q};

/// One summand `res ⊗ [gamma^♯]` together with its volume form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    /// Residue-field class.
    pub res: GrothElem,
    /// Valuations of the `k` residue coordinates; they gate which
    /// refinements `(1/m)Z` see the summand.
    pub res_vals: Vec<Q>,
    /// Γ-part, a subset of `Q^l`.
    pub gamma: GammaSet,
    /// Volume form `σ : Q^l → Q` (integer linear part).
    pub sigma: Affine,
    /// Human-readable origin of the summand.
    pub label: String,
}

impl Summand {
    pub fn new(res: GrothElem, res_vals: Vec<Q>, gamma: GammaSet, sigma: Affine, label: &str) -> Result<Self> {
        if sigma.dim() != gamma.ambient_dim() {
            return Err(Error::Internal("volume form and Γ-part have different dimensions".into()));
        }
        if sigma.coeffs.iter().any(|c| !c.is_integer()) {
            return Err(Error::Internal("volume form must have integer linear part".into()));
        }
        Ok(Summand { res, res_vals, gamma, sigma, label: label.to_string() })
    }

    /// RES-grading.
    pub fn k(&self) -> usize {
        self.res_vals.len()
    }

    /// Γ-grading.
    pub fn l(&self) -> usize {
        self.gamma.ambient_dim()
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.res_vals.iter().map(fmt_q).collect();
        write!(
            f,
            "{}: ({}) ⊗ {}   [k={}, l={}, residue valuations ({}), σ = {}]",
            self.label,
            self.res,
            self.gamma,
            self.k(),
            self.l(),
            vals.join(","),
            self.sigma
        )
    }
}

/// Finite formal sum of summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElem {
    pub summands: Vec<Summand>,
}

impl TensorElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_summand(s: Summand) -> Self {
        TensorElem { summands: vec![s] }
    }

    /// `[1] ⊗ point` in degree `(k, 0)` with all residue valuations 0.
    pub fn unit(k: usize) -> Self {
        Self::from_summand(
            Summand::new(GrothElem::one(), vec![Q::zero(); k], GammaSet::point0(), Affine::constant(0, Q::zero()), "1")
                .expect("unit summand"),
        )
    }

    pub fn add(&self, o: &TensorElem) -> TensorElem {
        let mut s = self.summands.clone();
        s.extend(o.summands.iter().cloned());
        TensorElem { summands: s }
    }

    pub fn neg(&self) -> TensorElem {
        self.scale(-1)
    }

    pub fn sub(&self, o: &TensorElem) -> TensorElem {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> TensorElem {
        TensorElem {
            summands: self.summands.iter().map(|s| Summand { res: s.res.scale(k), ..s.clone() }).collect(),
        }
    }

    /// Pairwise products: residues multiply, Γ-parts form products, volume
    /// forms add, gradings add.
    pub fn mul(&self, o: &TensorElem) -> TensorElem {
        let mut out = Vec::new();
        for a in &self.summands {
            for b in &o.summands {
                let (la, lb) = (a.l(), b.l());
                let sigma = a.sigma.embed(0, la + lb).add(&b.sigma.embed(la, la + lb));
                let mut vals = a.res_vals.clone();
                vals.extend(b.res_vals.iter().cloned());
                out.push(Summand {
                    res: a.res.mul(&b.res),
                    res_vals: vals,
                    gamma: a.gamma.product(&b.gamma),
                    sigma,
                    label: format!("{}·{}", a.label, b.label),
                });
            }
        }
        TensorElem { summands: out }
    }

    /// Map every residue class through `f`.
    pub fn map_res(&self, f: impl Fn(&GrothElem) -> Result<GrothElem>) -> Result<TensorElem> {
        let summands = self
            .summands
            .iter()
            .map(|s| Ok(Summand { res: f(&s.res)?, ..s.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(TensorElem { summands })
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `E_b`: `Σ χ_b(Γ) · res · ([A] − 1)^l`.
pub fn eb(t: &TensorElem) -> GrothElem {
    let mut r = GrothElem::zero();
    for s in &t.summands {
        let chi = chi_b(&s.gamma);
        if chi != 0 {
            r = r.add(&s.res.mul(&GrothElem::gm().pow(s.l() as u32)).scale(chi));
        }
    }
    r
}

/// `E_g`: `Σ χ_g(Γ) · res · ([A] − 1)^l · [A]^{−(k+l)}`.
pub fn eg(t: &TensorElem) -> GrothElem {
    let mut r = GrothElem::zero();
    for s in &t.summands {
        let chi = chi_g(&s.gamma);
        if chi != 0 {
            let term = s.res.mul(&GrothElem::gm().pow(s.l() as u32)).shift_a(-((s.k() + s.l()) as i64));
            r = r.add(&term.scale(chi));
        }
    }
    r
}

/// The relation element `P − 1`.
pub fn p_minus_one() -> TensorElem {
    let half_line = make_interval(Some(Q::zero()), None, false, false).expect("half-line");
    let ray = Summand::new(GrothElem::one(), vec![], half_line, Affine::coord(1, 0), "(0,∞)").expect("ray");
    TensorElem::unit(1).sub(&TensorElem::from_summand(ray)).sub(&TensorElem::unit(0))
}

/// `P_γ = [RV°° ∖ RV°°_γ] + [{t_γ}] − [1]` for positive `γ`.
pub fn p_gamma(gamma: &Q) -> Result<TensorElem> {
    if !gamma.is_positive() {
        return unsupported("P_γ needs a positive γ");
    }
    let seg = make_interval(Some(Q::zero()), Some(gamma.clone()), false, true)?;
    let seg = Summand::new(GrothElem::one(), vec![], seg, Affine::coord(1, 0), "(0,γ]")?;
    let pt = Summand::new(
        GrothElem::one(),
        vec![gamma.clone()],
        GammaSet::point0(),
        Affine::constant(0, gamma.clone()),
        "t_γ",
    )?;
    Ok(TensorElem { summands: vec![seg, pt] }.sub(&TensorElem::unit(1)))
}

/// Laurent polynomial in `T` with coefficients in the Grothendieck ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TPoly {
    coeffs: BTreeMap<i64, GrothElem>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: GrothElem, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, &c);
        p
    }

    pub fn add_term(&mut self, e: i64, c: &GrothElem) {
        let v = self.coeffs.entry(e).or_default();
        *v = v.add(c);
        if v.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let mut r = self.clone();
        for (e, c) in &o.coeffs {
            r.add_term(*e, c);
        }
        r
    }

    pub fn coeff(&self, e: i64) -> GrothElem {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GrothElem)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| {
                let t = if *e == 0 { String::new() } else { format!("T^{e}") };
                match (c.as_int(), t.is_empty()) {
                    (Some(1), false) => t,
                    (_, true) => format!("({c})"),
                    _ => format!("({c})*{t}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `h_m`: every point `γ ∈ Γ ∩ (1/m)Z^l` of a summand whose residue
/// valuations lie in `(1/m)Z` contributes `res·([A] − 1)^l·T^{−mσ(γ)}`.
pub fn hm(t: &TensorElem, m: u64) -> Result<TPoly> {
    if m == 0 {
        return unsupported("h_m needs a positive m");
    }
    let mq = qi(m as i64);
    let mut out = TPoly::zero();
    for s in &t.summands {
        if !s.res_vals.iter().all(|v| in_lattice(v, m)) {
            continue;
        }
        let weight = s.res.mul(&GrothElem::gm().pow(s.l() as u32));
        for p in s.gamma.lattice_points(m)? {
            let e = -(&mq * s.sigma.eval(&p));
            let e = to_i64(&e).ok_or_else(|| {
                Error::Unsupported(format!(
                    "non-integer T-exponent {} in h_{m} (volume form not integral on the lattice)",
                    fmt_q(&e)
                ))
            })?;
            out.add_term(e, &weight);
        }
    }
    Ok(out)
}

/// `η`: substitute `T := [A]`.
pub fn eta(p: &TPoly) -> GrothElem {
    let mut r = GrothElem::zero();
    for (e, c) in p.terms() {
        r = r.add(&c.shift_a(e));
    }
    r
}

/// Convenience: `η ∘ h_m`.
pub fn eta_hm(t: &TensorElem, m: u64) -> Result<GrothElem> {
    Ok(eta(&hm(t, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_calc::open_interval;
    use crate::groth_core::{Field, Tag};
    use crate::rational::q;

    fn torsor2() -> GrothElem {
        GrothElem::kummer(2, false, Field::R, Tag::Res(2))
    }

    #[test]
    fn eb_examples() {
        let s = Summand::new(
            torsor2(),
            vec![q(1, 2)],
            open_interval(q(1, 6), q(1, 3)).unwrap(),
            Affine::new(vec![qi(1)], q(1, 2)),
            "D",
        )
        .unwrap();
        let t = TensorElem::from_summand(s);
        assert_eq!(eb(&t), GrothElem::gm().mul(&torsor2()).neg());
        assert_eq!(eb(&TensorElem::unit(0)), GrothElem::one());
        assert_eq!(eg(&TensorElem::unit(1)), GrothElem::a_pow(-1));
        assert!(eg(&TensorElem::zero()).is_zero());
    }

    #[test]
    fn relations_vanish() {
        assert!(eb(&p_minus_one()).is_zero());
        assert!(eg(&p_minus_one()).is_zero());
        for g in 1..=3 {
            for m in 1..=6 {
                assert!(eta_hm(&p_gamma(&qi(g)).unwrap(), m).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn hm_examples() {
        let p = hm(&p_gamma(&qi(1)).unwrap(), 2).unwrap();
        let gm = GrothElem::gm();
        assert_eq!(p.coeff(-1), gm);
        assert_eq!(p.coeff(-2), gm.add(&GrothElem::one()));
        assert_eq!(p.coeff(0), GrothElem::from_int(-1));
        let c = GrothElem::named("c", Field::C, Tag::Plain);
        let s = Summand::new(c.clone(), vec![], open_interval(qi(0), qi(1)).unwrap(), Affine::coord(1, 0), "c").unwrap();
        let p = hm(&TensorElem::from_summand(s), 2).unwrap();
        assert_eq!(p, TPoly::monomial(c.mul(&gm), -1));
    }

    #[test]
    fn hm_rejects_fractional_exponents() {
        let s = Summand::new(
            GrothElem::one(),
            vec![],
            GammaSet::point(&[q(1, 2)]),
            Affine::new(vec![qi(1)], q(1, 3)),
            "bad",
        )
        .unwrap();
        assert!(hm(&TensorElem::from_summand(s), 2).is_err());
    }

    #[test]
    fn products_respect_retractions() {
        let a = p_gamma(&qi(2)).unwrap();
        let b = p_minus_one();
        assert!(eb(&a.mul(&b)).is_zero());
        assert!(eg(&a.mul(&b)).is_zero());
        assert_eq!(eb(&a.mul(&a)), eb(&a).mul(&eb(&a)));
    }
}
