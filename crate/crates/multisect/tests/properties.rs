mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cutting_keeps_euler(r in recipe(), f in 0usize..8, mask in any::<u32>()) {
        check_euler_conserved(&r.build(), f, mask)?;
    }

    #[test]
    fn cut_systems_have_no_parallel_pair(r in recipe()) {
        check_cut_system_not_parallel(&r.build())?;
    }

    #[test]
    fn handleslides_keep_invariants(r in recipe(), f in 0usize..8, c in 0usize..8, o in 0usize..8) {
        let slid = check_handleslide(&r.build(), f, c, o)?;
        prop_assume!(slid);
    }

    #[test]
    fn text_round_trips(r in recipe(), shuffle in prop::collection::vec(any::<usize>(), 0..40)) {
        check_round_trip(&r.build(), &shuffle)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn stabilizations_are_found(r in recipe(), k in 0usize..8, pick in 0usize..64) {
        check_stabilization_found(&r.build(), k, pick)?;
    }
}
