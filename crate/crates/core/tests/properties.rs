use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relsing_testkit::suite;

fn run(check: fn(&mut ChaCha8Rng) -> Result<(), String>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check(&mut rng).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn local_quotient_dimension_matches_macaulay_oracle(seed in any::<u64>()) {
        run(suite::quotient_dimension, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn milnor_number_is_invariant_under_linear_coordinate_changes(seed in any::<u64>()) {
        run(suite::milnor_invariance, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in any::<u64>()) {
        run(suite::normal_form_laws, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn bruce_roberts_number_with_coordinate_fields_is_milnor_number(seed in any::<u64>()) {
        run(suite::bruce_roberts_coordinate_fields, seed)?;
    }
}
