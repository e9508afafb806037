//! Strategies and checks shared by the property suite and the acceptance
//! harness.

#![allow(dead_code)]

use motivic_milnor::gamma_calc::{chi_b, chi_g, make_interval, Affine, GammaCell, GammaSet};
use motivic_milnor::groth_core::{eb, eg, Field, GrothElem, Summand, Tag, TensorElem};
use motivic_milnor::newton_engine::LaurentPoly;
use motivic_milnor::rational::{q, qi, Q};
use motivic_milnor::realize_maps::{beta_with, realize_complex_with, realize_real_with, KnowledgeBase, UPoly};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = std::result::Result<(), TestCaseError>;

/// A runner with a fixed seed, for reproducible acceptance runs.
pub fn deterministic_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn affine(coeffs: &[i64], c: (i64, i64)) -> Affine {
    Affine::new(coeffs.iter().map(|&a| qi(a)).collect(), q(c.0, c.1))
}

// ----- Γ-cells and refinements -----

fn small_affine(dim: usize) -> impl Strategy<Value = Affine> {
    (prop::collection::vec(-3i64..=3, dim), -6i64..=6, 1i64..=4).prop_map(|(c, n, d)| affine(&c, (n, d)))
}

/// A random relatively open cell in dimension 1 or 2 (or `None` if empty)
/// with one or two random refining hyperplanes.
pub fn refinement_case() -> impl Strategy<Value = (Option<GammaSet>, Vec<Affine>)> {
    (1usize..=2).prop_flat_map(|dim| {
        (
            prop::collection::vec(small_affine(dim), 0..=3)
                .prop_map(move |strict| GammaCell::new(dim, vec![], strict).ok().map(GammaSet::from_cell)),
            prop::collection::vec(small_affine(dim), 1..=2),
        )
    })
}

pub fn check_refinement((cell, hs): &(Option<GammaSet>, Vec<Affine>)) -> Check {
    let Some(s) = cell else { return Ok(()) };
    let mut r = s.clone();
    for h in hs {
        if h.is_constant() {
            continue;
        }
        r = r.refine(h);
    }
    prop_assert_eq!(chi_b(&r), chi_b(s));
    prop_assert_eq!(chi_g(&r), chi_g(s));
    Ok(())
}

// ----- random ring elements -----

fn curve(a: i64, b: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms(&[((a, 0), 1), ((0, b), 1)])
}

/// Complex atoms whose Euler characteristic has a built-in rule.
fn complex_atom(k: u8) -> GrothElem {
    match k % 5 {
        0 => GrothElem::kummer(2, false, Field::C, Tag::Mu(2)),
        1 => GrothElem::kummer(3, false, Field::C, Tag::Mu(3)),
        2 => GrothElem::face_curve(&curve(2, 3), Field::C, Tag::Mu(6)),
        3 => GrothElem::face_curve(&curve(3, 4), Field::C, Tag::Mu(12)),
        _ => GrothElem::gm(),
    }
}

/// Real atoms whose Euler characteristic and `β` are known (the curve via
/// the built-in knowledge base).
fn real_atom(k: u8) -> GrothElem {
    match k % 5 {
        0 => GrothElem::kummer(2, false, Field::R, Tag::Plain),
        1 => GrothElem::kummer(4, true, Field::R, Tag::Plain),
        2 => GrothElem::kummer(3, false, Field::R, Tag::Plain),
        3 => GrothElem::face_curve(&LaurentPoly::from_int_terms(&[((6, 0), 1), ((2, 2), 1)]), Field::R, Tag::Plain),
        _ => GrothElem::gm(),
    }
}

pub fn elem(real: bool) -> impl Strategy<Value = GrothElem> {
    prop::collection::vec((-3i64..=3, -2i64..=2, prop::collection::vec(0u8..5, 0..=2)), 0..=3).prop_map(
        move |terms| {
            let mut e = GrothElem::zero();
            for (c, k, atoms) in terms {
                let mut t = GrothElem::a_pow(k).scale(c);
                for a in atoms {
                    t = t.mul(&if real { real_atom(a) } else { complex_atom(a) });
                }
                e = e.add(&t);
            }
            e
        },
    )
}

fn gamma_pool(k: u8) -> (GammaSet, Affine) {
    match k % 5 {
        0 => (GammaSet::point0(), Affine::constant(0, q(1, 2))),
        1 => (make_interval(Some(q(1, 3)), None, false, false).unwrap(), affine(&[1], (1, 6))),
        2 => (make_interval(Some(q(1, 6)), Some(q(1, 3)), false, false).unwrap(), affine(&[0], (1, 2))),
        3 => (make_interval(Some(qi(0)), Some(qi(1)), false, true).unwrap(), affine(&[2], (0, 1))),
        _ => (make_interval(Some(qi(0)), None, false, false).unwrap(), affine(&[1], (0, 1))),
    }
}

pub fn tensor() -> impl Strategy<Value = TensorElem> {
    prop::collection::vec((elem(false), 0u8..5, prop::collection::vec(0i64..=2, 0..=2)), 0..=3).prop_map(|parts| {
        let mut t = TensorElem::zero();
        for (res, g, vals) in parts {
            let (gamma, sigma) = gamma_pool(g);
            let vals: Vec<Q> = vals.into_iter().map(|v| q(v, 2)).collect();
            t = t.add(&TensorElem::from_summand(Summand::new(res, vals, gamma, sigma, "random").unwrap()));
        }
        t
    })
}

pub fn check_retractions((s, t): &(TensorElem, TensorElem)) -> Check {
    prop_assert_eq!(eb(&s.add(t)), eb(s).add(&eb(t)));
    prop_assert_eq!(eg(&s.add(t)), eg(s).add(&eg(t)));
    prop_assert_eq!(eb(&s.mul(t)), eb(s).mul(&eb(t)));
    prop_assert_eq!(eg(&s.mul(t)), eg(s).mul(&eg(t)));
    Ok(())
}

pub fn check_complex_euler((a, b): &(GrothElem, GrothElem)) -> Check {
    let kb = KnowledgeBase::empty();
    let chi = |e: &GrothElem| realize_complex_with(e, &kb).unwrap();
    prop_assert_eq!(chi(&a.add(b)), chi(a) + chi(b));
    prop_assert_eq!(chi(&a.mul(b)), chi(a) * chi(b));
    Ok(())
}

fn at_minus_one(p: &UPoly) -> i64 {
    (-40i64..=40).map(|k| p.coeff(k) * if k % 2 == 0 { 1 } else { -1 }).sum()
}

pub fn check_real_realizations((a, b): &(GrothElem, GrothElem)) -> Check {
    let kb = KnowledgeBase::builtin();
    let chi = |e: &GrothElem| realize_real_with(e, &kb).unwrap();
    prop_assert_eq!(chi(&a.add(b)), chi(a) + chi(b));
    prop_assert_eq!(chi(&a.mul(b)), chi(a) * chi(b));
    let be = |e: &GrothElem| beta_with(e, &kb).unwrap();
    prop_assert_eq!(be(&a.add(b)), be(a).add(&be(b)));
    prop_assert_eq!(be(&a.mul(b)), be(a).mul(&be(b)));
    // β at u = −1 is the real Euler characteristic.
    prop_assert_eq!(at_minus_one(&be(a)), chi(a));
    Ok(())
}

pub fn check_json((a, b): &(GrothElem, GrothElem)) -> Check {
    for e in [a, b] {
        let s = serde_json::to_string(e).unwrap();
        prop_assert_eq!(&serde_json::from_str::<GrothElem>(&s).unwrap(), e);
    }
    Ok(())
}

// ----- monomial torsors under unimodular changes of variables -----

fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, k, swap) in ops {
        let (i, j) = (i % n, j % n);
        if swap {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        } else if i != j {
            for row in u.iter_mut() {
                row[j] += k * row[i];
            }
        }
    }
    u
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect())
        .collect()
}

/// `(n, rows, target signs, column operations, real?)`.
pub type TorsorCase = (usize, Vec<Vec<i64>>, Vec<bool>, Vec<(usize, usize, i64, bool)>, bool);

pub fn torsor_case() -> impl Strategy<Value = TorsorCase> {
    (
        1usize..=3,
        prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=2),
        prop::collection::vec(any::<bool>(), 2),
        prop::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 0..6),
        any::<bool>(),
    )
}

pub fn check_torsor_invariance((n, rows, signs, ops, real): &TorsorCase) -> Check {
    let n = *n;
    let a: Vec<Vec<i64>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let targets: Vec<Q> = signs[..a.len()].iter().map(|&s| if s { qi(-1) } else { qi(1) }).collect();
    let (field, tag) = if *real { (Field::R, Tag::Swap(true)) } else { (Field::C, Tag::Mu(6)) };
    let u = unimodular(n, ops);
    let lhs = GrothElem::torsor_system(&a, n, &targets, field, tag).unwrap();
    let rhs = GrothElem::torsor_system(&matmul(&a, &u), n, &targets, field, tag).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}
