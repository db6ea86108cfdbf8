mod common;

use common::props::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn saturation_algorithms_agree(input in homogeneous_ideals()) {
        saturation_agreement(input)?;
    }

    #[test]
    fn saturation_is_idempotent(input in ideals()) {
        saturation_idempotent(input)?;
    }

    #[test]
    fn pipeline_commutes(input in pipeline_inputs()) {
        pipeline_consistency(input)?;
    }

    #[test]
    fn choice_of_v_is_irrelevant(input in v_shift_inputs()) {
        v_independence(input)?;
    }
}

proptest! {
    #[test]
    fn monomial_maps_are_homomorphisms(input in map_inputs()) {
        map_homomorphism(input)?;
    }

    #[test]
    fn monomial_maps_compose(input in composition_inputs()) {
        map_composition(input)?;
    }

    #[test]
    fn hermite_form(m in normal_form_inputs()) {
        hnf_identity(m)?;
    }

    #[test]
    fn smith_form(m in normal_form_inputs()) {
        snf_identity(m)?;
    }
}
