use fibseq_acceptance::checks::{acyclic_fiber_vanishes, field_for, monodromy_e2, product_degenerates};
use fibseq_acceptance::rng;
use proptest::prelude::*;

fn run(check: fibseq_acceptance::checks::Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_degenerate_at_e2(seed in any::<u64>()) {
        run(product_degenerates(&mut rng(seed), field_for(seed)))?;
    }

    #[test]
    fn acyclic_fibers_have_acyclic_totals(seed in any::<u64>()) {
        run(acyclic_fiber_vanishes(&mut rng(seed), field_for(seed)))?;
    }

    #[test]
    fn e2_from_local_coefficients_is_page_two(seed in any::<u64>()) {
        run(monodromy_e2(&mut rng(seed), field_for(seed)))?;
    }
}
