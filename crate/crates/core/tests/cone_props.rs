mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{dual_dual_case, negative_square_case, random_cone, same_cone};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_of_dual_is_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(dual_dual_case(&mut rng), Ok(()));
    }

    #[test]
    fn dual_generators_pair_nonnegatively(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cone = random_cone(&mut rng, dim, dim);
        let dual = cone.dual();
        for x in dual.generators() {
            for g in cone.generators() {
                prop_assert!(folint_core::cones::pairing(x, g) >= 0.into());
            }
        }
        prop_assert!(same_cone(&dual, &dual.dual().dual()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn negative_square_agrees_with_witness_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = negative_square_case(&mut rng);
        prop_assert!(r.is_ok(), "{:?}", r);
    }
}
