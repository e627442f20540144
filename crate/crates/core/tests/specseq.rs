use fibseq_acceptance::checks::{field_for, tower_soundness, truncation_commutes};
use fibseq_acceptance::{random_split, rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_towers_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sfc = random_split(&mut r, field_for(seed), 30, 5);
        if let Err(e) = tower_soundness(&sfc) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn truncations_commute_with_differentials(seed in any::<u64>()) {
        let mut r = rng(seed);
        if let Err(e) = truncation_commutes(&mut r, field_for(seed)) {
            return Err(TestCaseError::fail(e));
        }
    }
}
