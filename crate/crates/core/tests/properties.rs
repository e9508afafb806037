//! Property suites: refinement invariance of the Γ-Euler characteristics,
//! ring laws for the retractions and realizations, normal-form invariance of
//! monomial torsors, and JSON round trips.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn refinement_preserves_euler_characteristics(case in refinement_case()) {
        check_refinement(&case)?;
    }

    #[test]
    fn torsor_normal_form_is_invariant(case in torsor_case()) {
        check_torsor_invariance(&case)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(220))]

    #[test]
    fn retractions_are_ring_homomorphisms(s in tensor(), t in tensor()) {
        check_retractions(&(s, t))?;
    }

    #[test]
    fn complex_euler_is_a_ring_homomorphism(a in elem(false), b in elem(false)) {
        check_complex_euler(&(a, b))?;
    }

    #[test]
    fn real_realizations_are_ring_homomorphisms(a in elem(true), b in elem(true)) {
        check_real_realizations(&(a, b))?;
    }

    #[test]
    fn classes_round_trip_through_json(a in elem(false), b in elem(true)) {
        check_json(&(a, b))?;
    }
}
