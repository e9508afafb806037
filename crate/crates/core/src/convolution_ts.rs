//! Convolution of diagonal classes and the local Thom–Sebastiani formula.
//!
//! A diagonal class here is a product of Kummer torsors
//! `{c₁u₁^{d₁} = 1} × … × {c_ℓ u_ℓ^{d_ℓ} = 1}` with its `μ̂`-action.  The
//! two-factor convolution splits the torus `G_m²` along the antidiagonal
//! locus `{c₁u^{d₁} + c₂v^{d₂} = 0}`:
//!
//! ```text
//! Ψ = −(Ψ̇ − Ψ̈),  Ψ̇ = [{c₁u^{d₁} + c₂v^{d₂} = 1} ∩ G_m²],
//!                 Ψ̈ = [{c₁u^{d₁} = −c₂v^{d₂}} ∩ G_m²]
//! ```
//!
//! evaluated through the Smith normal form of the exponent matrix.

use num::{integer::lcm, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Result};
use crate::groth_core::{Field, GrothElem, Tag};
use crate::milnor_calc::{motivic_fiber_b, Sign};
use crate::newton_engine::{kouchnirenko_mu, LaurentPoly};
use crate::rational::{q, Q};
use crate::realize_maps::realize_complex;

/// One factor `{c · u^d = 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerFactor {
    pub degree: u64,
    pub coefficient: Q,
}

/// `multiplicity · Π` of Kummer factors on `G_m^ℓ`, each factor carrying
/// its own `μ_d`-action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagClass {
    pub factors: Vec<KummerFactor>,
    pub multiplicity: i64,
    pub field: Field,
}

impl DiagClass {
    /// Product of `{u_i^{d_i} = 1}`.
    pub fn kummer(degrees: &[u64], field: Field) -> Result<Self> {
        Self::new(
            degrees.iter().map(|&d| KummerFactor { degree: d, coefficient: Q::one() }).collect(),
            1,
            field,
        )
    }

    pub fn new(factors: Vec<KummerFactor>, multiplicity: i64, field: Field) -> Result<Self> {
        if factors.is_empty() {
            return unsupported("a diagonal class needs at least one factor");
        }
        if factors.iter().any(|f| f.degree == 0 || f.coefficient.is_zero()) {
            return unsupported("Kummer factors need a positive degree and a nonzero coefficient");
        }
        Ok(DiagClass { factors, multiplicity, field })
    }

    /// `ℓ`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Diagonal weights `θ_i = 1/d_i` of the residue coordinates.
    pub fn theta(&self) -> Vec<Q> {
        self.factors.iter().map(|f| q(1, f.degree as i64)).collect()
    }

    /// Weights `d_i` of the map `π = Σ c_i u_i^{d_i}`.
    pub fn pi_weights(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.degree).collect()
    }

    fn tag(&self, d: u64) -> Tag {
        Tag::Res(d).twisted(self.field)
    }

    fn factor_class(&self, f: &KummerFactor) -> GrothElem {
        GrothElem::kummer(f.degree, f.coefficient.is_negative(), self.field, self.tag(f.degree))
    }

    /// The class itself.
    pub fn base(&self) -> GrothElem {
        self.factors
            .iter()
            .fold(GrothElem::from_int(self.multiplicity), |acc, f| acc.mul(&self.factor_class(f)))
    }
}

/// Two-factor pieces `(Ψ̇, Ψ̈)`.
pub fn psi_parts(e: &DiagClass) -> Result<(GrothElem, GrothElem)> {
    let [f1, f2] = e.factors.as_slice() else {
        return unsupported("unsupported convolution atom: only ℓ ≤ 2 factors are implemented");
    };
    let (a, b) = (f1.degree as i64, f2.degree as i64);
    let g = LaurentPoly::monomial(f1.coefficient.clone(), a, 0).add(&LaurentPoly::monomial(f2.coefficient.clone(), 0, b));
    let dot = GrothElem::face_curve(&g, e.field, e.tag(lcm(f1.degree, f2.degree)))
        .sub(&e.factor_class(f1))
        .sub(&e.factor_class(f2));
    let ddot = GrothElem::torsor_system(
        &vec![vec![a, -b]],
        2,
        &[-&f2.coefficient / &f1.coefficient],
        e.field,
        Tag::Plain,
    )?;
    Ok((dot.scale(e.multiplicity), ddot.scale(e.multiplicity)))
}

/// The convolution operator `Ψ`.  One factor: the identity.
pub fn psi(e: &DiagClass) -> Result<GrothElem> {
    if e.multiplicity == 0 {
        return Ok(GrothElem::zero());
    }
    match e.len() {
        1 => Ok(e.base()),
        2 => {
            let (dot, ddot) = psi_parts(e)?;
            Ok(dot.sub(&ddot).neg())
        }
        _ => unsupported("unsupported convolution atom: only ℓ ≤ 2 factors are implemented"),
    }
}

/// The single variable (0 = x, 1 = y) a nonzero polynomial depends on.
fn sole_variable(f: &LaurentPoly) -> Result<usize> {
    if f.is_zero() {
        return unsupported("zero polynomial");
    }
    let sup = f.support();
    let xs = sup.iter().any(|e| e.0 != 0);
    let ys = sup.iter().any(|e| e.1 != 0);
    match (xs, ys) {
        (true, false) => Ok(0),
        (false, true) => Ok(1),
        _ => unsupported("expected a polynomial in a single variable"),
    }
}

/// Lowest-order term `(degree, coefficient)` of a univariate polynomial.
fn lowest_term(f: &LaurentPoly) -> Result<KummerFactor> {
    let (e, c) = f.terms().iter().min_by_key(|(e, _)| e.0 + e.1).map(|(e, c)| (*e, c.clone())).unwrap();
    if f.terms().iter().any(|(e, _)| e.0 < 0 || e.1 < 0) || e.0 + e.1 == 0 {
        return unsupported("expected a polynomial vanishing at the origin");
    }
    Ok(KummerFactor { degree: (e.0 + e.1) as u64, coefficient: c })
}

/// `S_{f+f′} = S_f + S_{f′} − S_f * S_{f′}` for `f`, `f′` in separate
/// variables.
pub fn ts_two(f: &LaurentPoly, fp: &LaurentPoly, field: Field) -> Result<GrothElem> {
    if sole_variable(f)? == sole_variable(fp)? {
        return unsupported("Thom–Sebastiani needs polynomials in separate variables");
    }
    let conv = DiagClass::new(vec![lowest_term(f)?, lowest_term(fp)?], 1, field)?;
    Ok(motivic_fiber_b(f, field, Sign::Plus)?
        .add(&motivic_fiber_b(fp, field, Sign::Plus)?)
        .sub(&psi(&conv)?))
}

/// One labelled term of an assembled Thom–Sebastiani sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsTerm {
    pub label: String,
    pub class: GrothElem,
}

/// The assembled right-hand side for `h = g^N + Σ f^{m_ı}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsAssembly {
    pub h: LaurentPoly,
    pub terms: Vec<TsTerm>,
    pub total: GrothElem,
    pub diagnostics: Vec<String>,
}

/// Assemble the local Thom–Sebastiani formula for `f = x`, `g = y` and
/// `h = y^N + x^{m₂} + … + x^{m_ℓ}` over `C`.
///
/// The terms are `S_{g^N}(Z_f) = [μ_N]`, `S_{f^{m₂}} = [μ_{m₂}]`, for
/// `ı ≥ 3` the classes `C_ı = S_{f^{mı}}([Z_{g^N + f_(ı−1)}])`, and the
/// convolutions `Ψ_ı`.  For `ı ≥ 3` the antidiagonal locus is the whole
/// branch set, so `Ψ_ı = C_ı` and those contributions cancel.
pub fn ts_assemble(f: &LaurentPoly, g: &LaurentPoly, n: u64, m_list: &[u64]) -> Result<TsAssembly> {
    let x = LaurentPoly::monomial(Q::one(), 1, 0);
    let y = LaurentPoly::monomial(Q::one(), 0, 1);
    if *f != x || *g != y {
        return unsupported("unsupported (f, g) pair: only f = x, g = y is implemented");
    }
    if n == 0 || m_list.is_empty() || m_list[0] == 0 {
        return unsupported("degenerate parameters: need N ≥ 1 and a nonempty list of positive m");
    }
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return unsupported("degenerate m list: exponents must be strictly increasing");
    }
    let field = Field::C;
    let m2 = m_list[0];
    let mut diagnostics = Vec::new();
    let mut order = vec![m2, n];
    order.extend(&m_list[1..]);
    if order.windows(2).any(|w| w[0] >= w[1]) {
        diagnostics.push(format!(
            "segment hypothesis: the ordering m₂ < N < m₃ < … fails for {order:?}; the two sides are compared anyway"
        ));
    }
    let mu = |d: u64| GrothElem::kummer(d, false, field, Tag::Mu(d));
    let mut terms = vec![
        TsTerm { label: format!("S_{{g^{n}}}([Z_f])"), class: mu(n) },
        TsTerm { label: format!("S_{{f^{m2}}}"), class: mu(m2) },
    ];
    let mut convs = vec![TsTerm {
        label: "Ψ_2".into(),
        class: psi(&DiagClass::kummer(&[n, m2], field)?)?,
    }];
    for (idx, &mi) in m_list.iter().enumerate().skip(1) {
        let tag = Tag::Mu(lcm(mi, lcm(m2, n)));
        let rows = vec![vec![mi as i64, 0], vec![m2 as i64, -(n as i64)]];
        let x_plus = GrothElem::torsor_system(&rows, 2, &[Q::one(), -Q::one()], field, tag)?;
        let branch = GrothElem::torsor_system(&vec![vec![m2 as i64, -(n as i64)]], 2, &[-Q::one()], field, Tag::Plain)?;
        let dot = branch.sub(&x_plus);
        let psi_i = dot.sub(&branch).neg();
        let k = idx + 2;
        terms.push(TsTerm { label: format!("C_{k}"), class: x_plus });
        convs.push(TsTerm { label: format!("Ψ_{k}"), class: psi_i });
    }
    let mut total = GrothElem::sum(terms.iter().map(|t| &t.class));
    for c in &convs {
        total = total.sub(&c.class);
        terms.push(TsTerm { label: format!("−{}", c.label), class: c.class.neg() });
    }
    let mut h = y.pow(n as u32);
    for &mi in m_list {
        h = h.add(&x.pow(mi as u32));
    }
    Ok(TsAssembly { h, terms, total, diagnostics })
}

/// Comparison of an assembly with the direct Newton-polygon computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsCheck {
    pub assembled: GrothElem,
    pub direct: GrothElem,
    pub euler_assembled: i64,
    pub euler_direct: i64,
    /// `1 − μ(h)`, the reduced-Euler-characteristic oracle.
    pub euler_oracle: i64,
    pub classes_equal: bool,
    pub euler_equal: bool,
}

pub fn ts_check(a: &TsAssembly) -> Result<TsCheck> {
    let direct = motivic_fiber_b(&a.h, Field::C, Sign::Plus)?;
    let euler_assembled = realize_complex(&a.total)?;
    let euler_direct = realize_complex(&direct)?;
    let euler_oracle = 1 - kouchnirenko_mu(&a.h)?;
    Ok(TsCheck {
        classes_equal: a.total == direct,
        euler_equal: euler_assembled == euler_direct && euler_direct == euler_oracle,
        assembled: a.total.clone(),
        direct,
        euler_assembled,
        euler_direct,
        euler_oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groth_core::xi;
    use crate::parse::parse_poly;
    use crate::realize_maps::KnowledgeBase;

    fn chi(e: &GrothElem) -> i64 {
        crate::realize_maps::realize_complex_with(e, &KnowledgeBase::empty()).unwrap()
    }

    #[test]
    fn two_factor_convolution() {
        for (a, b) in [(2, 3), (2, 2), (4, 6), (3, 5)] {
            let e = DiagClass::kummer(&[a, b], Field::C).unwrap();
            let g = num::integer::gcd(a, b) as i64;
            let (_, ddot) = psi_parts(&e).unwrap();
            assert_eq!(ddot, GrothElem::gm().scale(g));
            // χ(μ_a * μ_b) = χ(μ_a)·χ(μ_b)
            assert_eq!(chi(&psi(&e).unwrap()), (a * b) as i64);
            // commutativity
            assert_eq!(psi(&e).unwrap(), psi(&DiagClass::kummer(&[b, a], Field::C).unwrap()).unwrap());
        }
    }

    #[test]
    fn unit_and_zero() {
        for a in 1..=5 {
            let e = DiagClass::kummer(&[a, 1], Field::C).unwrap();
            assert_eq!(chi(&psi(&e).unwrap()), chi(&e.base()));
        }
        let mut z = DiagClass::kummer(&[2, 3], Field::C).unwrap();
        z.multiplicity = 0;
        assert!(psi(&z).unwrap().is_zero());
        assert!(psi(&DiagClass::kummer(&[2, 3, 4], Field::C).unwrap()).is_err());
    }

    #[test]
    fn ts_two_matches_direct() {
        for (a, b) in [(1, 1), (2, 3), (2, 2), (3, 4), (4, 6), (5, 5)] {
            let f = parse_poly(&format!("x^{a}")).unwrap();
            let fp = parse_poly(&format!("y^{b}")).unwrap();
            for field in [Field::C, Field::R] {
                let direct = motivic_fiber_b(&f.add(&fp), field, Sign::Plus).unwrap();
                assert_eq!(ts_two(&f, &fp, field).unwrap(), direct, "x^{a}+y^{b} {field:?}");
            }
            let mu = kouchnirenko_mu(&f.add(&fp)).unwrap();
            assert_eq!(mu, (a - 1) * (b - 1));
            assert_eq!(chi(&ts_two(&f, &fp, Field::C).unwrap()), 1 - mu);
        }
        let x = parse_poly("x").unwrap();
        assert_eq!(ts_two(&x, &parse_poly("y^3").unwrap(), Field::C).unwrap(), GrothElem::one());
        assert!(ts_two(&x, &parse_poly("x^2").unwrap(), Field::C).is_err());
        assert!(ts_two(&x, &LaurentPoly::zero(), Field::C).is_err());
    }

    #[test]
    fn real_descent_for_coprime_degrees() {
        for (a, b) in [(2, 3), (3, 4), (2, 5), (3, 5)] {
            let f = parse_poly(&format!("x^{a}")).unwrap();
            let fp = parse_poly(&format!("y^{b}")).unwrap();
            let c = ts_two(&f, &fp, Field::C).unwrap();
            assert_eq!(xi(&c).unwrap(), ts_two(&f, &fp, Field::R).unwrap());
        }
    }

    #[test]
    fn assembly() {
        let (x, y) = (parse_poly("x").unwrap(), parse_poly("y").unwrap());
        for (n, ms) in [(3, vec![2]), (4, vec![3]), (3, vec![2, 5]), (4, vec![3, 5, 7]), (2, vec![5])] {
            let a = ts_assemble(&x, &y, n, &ms).unwrap();
            let c = ts_check(&a).unwrap();
            assert!(c.classes_equal && c.euler_equal, "{n} {ms:?}: {c:?}");
            let m = ms[0] as i64;
            assert_eq!(c.euler_assembled, 1 - (n as i64 - 1) * (m - 1));
        }
        assert!(!ts_assemble(&x, &y, 2, &[5]).unwrap().diagnostics.is_empty());
        assert!(ts_assemble(&x, &y, 3, &[]).is_err());
        assert!(ts_assemble(&x, &y, 3, &[4, 2]).is_err());
        assert!(ts_assemble(&y, &x, 3, &[2]).is_err());
    }
}
