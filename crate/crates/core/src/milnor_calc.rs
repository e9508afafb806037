//! The nonarchimedean Milnor fiber `{x ∈ M^n : rv(f(x)) = rv(t)}` of a
//! Newton-nondegenerate plane curve, integrated face by face, and the
//! motivic Milnor fibers and T-convex Euler characteristics derived from it.
//!
//! The decomposition is indexed by the compact faces of the Newton polygon:
//!
//! * an axis vertex `(a, 0)` contributes the locus `y = 0` (a Kummer torsor
//!   with one residue coordinate of valuation `1/a`) and the region where
//!   `x^a` dominates (the torsor times a ray in `vv(y)`);
//! * an interior vertex `x^p y^q` contributes a monomial torsor over an open
//!   segment of valuations (see [`twistoid_decompose`]);
//! * an edge `E` with primitive normal `w` and level `m_E` contributes the
//!   torus part of the face curve `{f_E = 1}` at the valuation point
//!   `w / m_E`, and each branch of `{f_E = 0}` on the torus contributes a
//!   cancellation region: in the coordinates `(λ, f)` along the branch it is
//!   `[G_m] ⊗ (0, 1/m_E)` with the Jacobian folded into the volume form.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Result};
use crate::gamma_calc::{make_interval, open_interval, Affine, GammaSet};
use crate::groth_core::{
    eb, eg, theta, twistoid_decompose, Field, GrothElem, RVMonomialSet, RvRow, Summand, Tag, TensorElem, ValIneq,
};
use crate::newton_engine::{is_nondegenerate, newton, LaurentPoly, NewtonData};
use crate::rational::{lcm_den, q, qi, Q};
use crate::realize_maps::realize_real;

/// Which fiber `f = +t` or `f = −t` is integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Closed or open T-convex Milnor fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Closed,
    Open,
}

/// Shape of the integral: the face-by-face form (unbounded rays at axis
/// vertices), or the form in which every ray `(β₀, ∞)` together with the
/// axis locus is traded for `(β₀, 1]` plus a point at valuation 1, so that
/// all Γ-parts are bounded and all summands are top-dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegralForm {
    Faces,
    Bounded,
}

/// Number of variables `f` actually depends on (1 or 2).
pub fn ambient_dim(f: &LaurentPoly) -> usize {
    let uses_x = f.support().iter().any(|e| e.0 != 0);
    let uses_y = f.support().iter().any(|e| e.1 != 0);
    usize::from(uses_x) + usize::from(uses_y)
}

fn signed(f: &LaurentPoly, sign: Sign) -> LaurentPoly {
    match sign {
        Sign::Plus => f.clone(),
        Sign::Minus => f.neg(),
    }
}

fn check_input(f: &LaurentPoly) -> Result<()> {
    if !f.is_polynomial() {
        return unsupported("f must be a polynomial (no negative exponents)");
    }
    if f.is_zero() {
        return unsupported("the zero polynomial has no Milnor fiber");
    }
    if !f.coeff(0, 0).is_zero() {
        return unsupported("f(0,0) must vanish");
    }
    Ok(())
}

/// Kummer torsor `{x^a = 1/c}` with residue tag of order `a`.
fn axis_torsor(a: i64, c: &Q, field: Field) -> GrothElem {
    GrothElem::kummer(a as u64, c.is_negative(), field, Tag::Res(a as u64))
}

/// The integral `∫[X_f]` as a tensor element (face-by-face form).
pub fn milnor_integral(f: &LaurentPoly, field: Field, sign: Sign) -> Result<TensorElem> {
    milnor_integral_in_form(f, field, sign, IntegralForm::Faces)
}

/// The integral `∫[X_f]` with bounded Γ-parts only.
pub fn milnor_integral_bounded(f: &LaurentPoly, field: Field, sign: Sign) -> Result<TensorElem> {
    milnor_integral_in_form(f, field, sign, IntegralForm::Bounded)
}

pub fn milnor_integral_in_form(f: &LaurentPoly, field: Field, sign: Sign, form: IntegralForm) -> Result<TensorElem> {
    check_input(f)?;
    let f = signed(f, sign);
    if ambient_dim(&f) == 1 {
        return univariate(&f, field);
    }
    if !is_nondegenerate(&f) {
        return unsupported(format!("f = {} is Newton-degenerate", f.render("x", "y")));
    }
    let nd = newton(&f)?;
    let mut out = TensorElem::zero();
    for i in 0..nd.vertices.len() {
        out = out.add(&vertex_pieces(&nd, i, field, form)?);
    }
    for i in 0..nd.edges.len() {
        out = out.add(&edge_pieces(&nd, i, field)?);
    }
    Ok(out)
}

/// `f` depends on one variable: only its lowest term matters.
fn univariate(f: &LaurentPoly, field: Field) -> Result<TensorElem> {
    let (e, c) = f.terms().iter().min_by_key(|(e, _)| e.0 + e.1).map(|(e, c)| (*e, c.clone())).unwrap();
    let a = e.0 + e.1;
    let s = Summand::new(
        axis_torsor(a, &c, field),
        vec![q(1, a)],
        GammaSet::point0(),
        Affine::constant(0, q(1, a)),
        &format!("vertex {}", LaurentPoly::monomial(Q::one(), e.0, e.1).render("x", "y")),
    )?;
    Ok(TensorElem::from_summand(s))
}

fn vertex_pieces(nd: &NewtonData, i: usize, field: Field, form: IntegralForm) -> Result<TensorElem> {
    let v = nd.vertices[i];
    let c = &nd.vertex_coeffs[i];
    let name = LaurentPoly::monomial(Q::one(), v.0, v.1).render("x", "y");
    let on_axis = v.0 == 0 || v.1 == 0;
    if on_axis && form == IntegralForm::Bounded {
        return axis_vertex_bounded(nd, i, field, &name);
    }
    let mut out = TensorElem::zero();
    if on_axis {
        // The locus where the other coordinate vanishes.
        let a = v.0 + v.1;
        out = out.add(&TensorElem::from_summand(Summand::new(
            axis_torsor(a, c, field),
            vec![q(1, a)],
            GammaSet::point0(),
            Affine::constant(0, q(1, a)),
            &format!("axis {name}"),
        )?));
    }
    // {rv(c x^p y^q) = rv(t)} inside the normal cone of the vertex.
    let lin = |a: i64, b: i64| Affine::new(vec![qi(a), qi(b)], Q::zero());
    let mut ineqs = Vec::new();
    for j in [i.wrapping_sub(1), i + 1] {
        if let Some(u) = nd.vertices.get(j) {
            ineqs.push(ValIneq { form: lin(u.0 - v.0, u.1 - v.1), strict: true });
        }
    }
    let set = RVMonomialSet::new(
        2,
        vec![RvRow { exponents: vec![v.0, v.1], coefficient: Q::one() / c, valuation: Q::one() }],
        ineqs,
        true,
    )?;
    let mut t = twistoid_decompose(&set, field)?;
    for s in &mut t.summands {
        s.label = format!("vertex {name}");
    }
    Ok(out.add(&t))
}

/// Axis vertex in bounded form: torsor ⊗ `(β₀, 1]` plus the point at
/// valuation 1 in the other coordinate.
fn axis_vertex_bounded(nd: &NewtonData, i: usize, field: Field, name: &str) -> Result<TensorElem> {
    let v = nd.vertices[i];
    let c = &nd.vertex_coeffs[i];
    let a = v.0 + v.1;
    // The neighbouring vertex (p', q'), in coordinates where the axis is x,
    // bounds the region where the axis term dominates: vv(y) > β₀.
    let u = if v.1 == 0 { i.checked_sub(1).map(|j| nd.vertices[j]) } else { nd.vertices.get(i + 1).copied() };
    let beta0 = match u {
        Some(u) => {
            let (p, qq) = if v.1 == 0 { (u.0, u.1) } else { (u.1, u.0) };
            (Q::one() - q(p, a)) / qi(qq)
        }
        None => Q::zero(),
    };
    let res = axis_torsor(a, c, field);
    let mut out = TensorElem::zero();
    if beta0 < Q::one() {
        let seg = make_interval(Some(beta0), Some(Q::one()), false, true)?;
        out = out.add(&TensorElem::from_summand(Summand::new(
            res.clone(),
            vec![q(1, a)],
            seg,
            Affine::new(vec![Q::one()], q(1, a)),
            &format!("vertex {name}"),
        )?));
    }
    out = out.add(&TensorElem::from_summand(Summand::new(
        res,
        vec![q(1, a), Q::one()],
        GammaSet::point0(),
        Affine::constant(0, q(1, a) + Q::one()),
        &format!("axis {name}"),
    )?));
    Ok(out)
}

/// Number of branches of `{f_E = 0}` on the torus over the given field.
fn branch_count(nd: &NewtonData, i: usize, field: Field) -> usize {
    let red = nd.edges[i].reduced();
    match field {
        Field::C => red.squarefree_part().strip_zero_root().degree().unwrap_or(0),
        Field::R => red.count_nonzero_real_roots(),
    }
}

fn edge_pieces(nd: &NewtonData, i: usize, field: Field) -> Result<TensorElem> {
    let e = &nd.edges[i];
    let (w1, w2, m) = (e.normal.0, e.normal.1, e.level);
    let vals = vec![q(w1, m), q(w2, m)];
    let tag = Tag::Res(lcm_den(&vals));
    let name = e.poly.render("x", "y");
    // Torus part of {f_E = 1}: the face curve minus its points on the axes.
    let mut res = GrothElem::face_curve(&e.poly, field, tag);
    if e.start.0 == 0 {
        res = res.sub(&axis_torsor(e.start.1, &e.poly.coeff(0, e.start.1), field));
    }
    if e.end.1 == 0 {
        res = res.sub(&axis_torsor(e.end.0, &e.poly.coeff(e.end.0, 0), field));
    }
    let mut out = TensorElem::from_summand(Summand::new(
        res,
        vals,
        GammaSet::point0(),
        Affine::constant(0, q(w1 + w2, m)),
        &format!("edge {name}"),
    )?);
    let count = branch_count(nd, i, field);
    if count > 0 {
        out = out.add(&TensorElem::from_summand(Summand::new(
            GrothElem::from_int(count as i64),
            vec![Q::one()],
            open_interval(Q::zero(), q(1, m))?,
            Affine::new(vec![qi(w1 + w2 - m)], Q::one()),
            &format!("cancellation {name}"),
        )?));
    }
    Ok(out)
}

/// `Θ(E_b(∫[X_f]))`: the motivic Milnor fiber with its `μ̂`-action (over
/// `C`) or `μ₂`-swap (over `R`).
pub fn motivic_fiber_b(f: &LaurentPoly, field: Field, sign: Sign) -> Result<GrothElem> {
    Ok(theta(&eb(&milnor_integral(f, field, sign)?)))
}

/// `Θ(E_g(∫[X_f]))`, in the ring localized at `[A]`.
pub fn motivic_fiber_g(f: &LaurentPoly, field: Field, sign: Sign) -> Result<GrothElem> {
    Ok(theta(&eg(&milnor_integral(f, field, sign)?)))
}

/// T-convex Euler characteristic of the closed (`χ_b^T`) or open
/// (`−χ_g^T`) real Milnor fiber.
pub fn tconvex_chi(f: &LaurentPoly, variant: Variant, sign: Sign) -> Result<i64> {
    match variant {
        Variant::Closed => realize_real(&motivic_fiber_b(f, Field::R, sign)?),
        Variant::Open => Ok(-realize_real(&motivic_fiber_g(f, Field::R, sign)?)?),
    }
}

/// Outcome of the closed/open comparison `χ_closed = (−1)^{d+1} χ_open`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenClosed {
    pub chi_closed: i64,
    pub chi_open: i64,
    pub dim: usize,
    pub holds: bool,
}

/// Compare the closed and open real Milnor fibers; `d` is the number of
/// variables of `f`.
pub fn check_open_closed(f: &LaurentPoly, sign: Sign) -> Result<OpenClosed> {
    let chi_closed = tconvex_chi(f, Variant::Closed, sign)?;
    let chi_open = tconvex_chi(f, Variant::Open, sign)?;
    let dim = ambient_dim(f);
    let factor = if dim % 2 == 1 { 1 } else { -1 };
    Ok(OpenClosed { chi_closed, chi_open, dim, holds: chi_closed == factor * chi_open })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_calc::chi_b;
    use crate::groth_core::forget;
    use crate::newton_engine::{kouchnirenko_mu, real_fiber_chi_by_sampling};
    use crate::realize_maps::realize_complex;

    fn p(t: &[((i64, i64), i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    fn exam() -> LaurentPoly {
        p(&[((6, 0), 1), ((2, 2), 1), ((0, 6), 1)])
    }

    #[test]
    fn exam_piece_list() {
        let t = milnor_integral(&exam(), Field::R, Sign::Plus).unwrap();
        let gammas: Vec<String> = t.summands.iter().map(|s| s.gamma.to_string()).collect();
        // axis points, rays, the x²y² segment and two edge points
        assert!(gammas.contains(&"(1/3,inf)".to_string()), "{gammas:?}");
        assert!(gammas.contains(&"(1/6,1/3)".to_string()), "{gammas:?}");
        let seg = t.summands.iter().find(|s| s.gamma.to_string() == "(1/6,1/3)").unwrap();
        assert_eq!(chi_b(&seg.gamma), -1);
        let fb = motivic_fiber_b(&exam(), Field::R, Sign::Plus).unwrap();
        assert_eq!(fb.to_string(), "2*[{x^6+x^2y^2=1}] - [Gm]*[{x^2=1}]");
    }

    #[test]
    fn monomials() {
        for (a, b) in [(1, 1), (2, 4), (3, 2), (6, 3)] {
            let f = p(&[((a, b), 1)]);
            let m = num::integer::gcd(a, b) as u64;
            let tor = GrothElem::kummer(m, false, Field::R, Tag::Res(m));
            let expect = theta(&GrothElem::gm().mul(&tor).neg());
            assert_eq!(motivic_fiber_b(&f, Field::R, Sign::Plus).unwrap(), expect);
            assert_eq!(motivic_fiber_g(&f, Field::R, Sign::Plus).unwrap(), expect.shift_a(-2));
            let mp = if m.is_multiple_of(2) { 2 } else { 1 };
            assert_eq!(tconvex_chi(&f, Variant::Closed, Sign::Plus).unwrap(), 2 * mp);
            assert_eq!(tconvex_chi(&f, Variant::Open, Sign::Plus).unwrap(), -2 * mp);
        }
    }

    #[test]
    fn smooth_point() {
        let f = LaurentPoly::x();
        let t = milnor_integral(&f, Field::C, Sign::Plus).unwrap();
        assert_eq!(t.summands.len(), 1);
        assert_eq!(motivic_fiber_b(&f, Field::C, Sign::Plus).unwrap(), GrothElem::one());
        assert_eq!(motivic_fiber_g(&f, Field::C, Sign::Plus).unwrap(), GrothElem::a_pow(-1));
        assert!(check_open_closed(&f, Sign::Plus).unwrap().holds);
    }

    #[test]
    fn bounded_form_agrees() {
        for f in [exam(), p(&[((2, 0), 1), ((0, 3), 1)]), p(&[((0, 1), 1), ((4, 0), -1)])] {
            for field in [Field::C, Field::R] {
                let a = milnor_integral(&f, field, Sign::Plus).unwrap();
                let b = milnor_integral_bounded(&f, field, Sign::Plus).unwrap();
                assert_eq!(eb(&a), eb(&b));
                assert_eq!(eg(&a), eg(&b));
                assert!(b.summands.iter().all(|s| s.gamma.is_bounded() && s.k() + s.l() == 2));
            }
        }
    }

    #[test]
    fn complex_euler_matches_milnor_number() {
        for f in [
            p(&[((2, 0), 1), ((0, 3), 1)]),
            p(&[((5, 0), 1), ((0, 5), 1)]),
            p(&[((2, 0), 1), ((0, 2), 1)]),
            exam(),
            p(&[((3, 0), 1), ((1, 1), 1), ((0, 3), 1)]),
        ] {
            let fb = motivic_fiber_b(&f, Field::C, Sign::Plus).unwrap();
            assert_eq!(realize_complex(&fb).unwrap(), 1 - kouchnirenko_mu(&f).unwrap(), "{f:?}");
        }
    }

    #[test]
    fn eg_is_eb_shifted() {
        for f in [exam(), p(&[((2, 0), 1), ((0, 3), -1)]), p(&[((2, 1), 1), ((0, 3), 1)])] {
            for field in [Field::C, Field::R] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let b = motivic_fiber_b(&f, field, sign).unwrap();
                    let g = motivic_fiber_g(&f, field, sign).unwrap();
                    assert_eq!(g, b.shift_a(-2));
                }
            }
        }
    }

    #[test]
    fn real_closed_fiber_against_sampling() {
        let r = q(1, 20);
        for f in [
            exam(),
            p(&[((2, 0), 1), ((0, 2), -1)]),
            p(&[((2, 0), 1), ((0, 3), 1)]),
            p(&[((2, 0), 1), ((0, 2), 1)]),
            p(&[((2, 1), 1), ((0, 3), 1)]),
            p(&[((3, 0), 1), ((0, 3), 1)]),
        ] {
            for (sign, neg) in [(Sign::Plus, false), (Sign::Minus, true)] {
                let chi = tconvex_chi(&f, Variant::Closed, sign).unwrap();
                assert_eq!(chi, real_fiber_chi_by_sampling(&f, neg, &r, 400), "{f:?} {sign:?}");
            }
        }
    }

    #[test]
    fn sign_is_negation() {
        let f = p(&[((2, 0), 1), ((0, 4), -3)]);
        assert_eq!(
            motivic_fiber_b(&f, Field::R, Sign::Minus).unwrap(),
            motivic_fiber_b(&f.neg(), Field::R, Sign::Plus).unwrap()
        );
    }

    #[test]
    fn field_descent_of_tags() {
        let fr = motivic_fiber_b(&exam(), Field::R, Sign::Plus).unwrap();
        assert_eq!(forget(&fr), forget(&forget(&fr)));
        assert_eq!(forget(&fr).to_string(), "2*[{x^6+x^2y^2=1}] - 2*[Gm]");
    }

    #[test]
    fn errors() {
        assert!(milnor_integral(&p(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)]), Field::C, Sign::Plus).is_err());
        assert!(milnor_integral(&p(&[((0, 0), 1), ((1, 0), 1)]), Field::C, Sign::Plus).is_err());
    }
}
