use gol_core::green::{closure_trials, member, mul, random_member, rank, reduce_mod_p, GreenOrderSpec};
use gol_core::par::Exec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn products_stay_in_the_order(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 2..7u32, seed in any::<u64>()) {
        let spec = GreenOrderSpec::lambda0(p, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_member(&spec, &mut rng), random_member(&spec, &mut rng), random_member(&spec, &mut rng));
        let xy = mul(&spec, &x, &y).unwrap();
        prop_assert!(member(&spec, &xy).unwrap().0);
        // associativity
        prop_assert_eq!(mul(&spec, &xy, &z).unwrap(), mul(&spec, &x, &mul(&spec, &y, &z).unwrap()).unwrap());
    }

    #[test]
    fn rank_equals_reduced_dimension(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 2..6u32) {
        let spec = GreenOrderSpec::lambda0(p, n).unwrap();
        prop_assert_eq!(rank(&spec), reduce_mod_p(&spec).unwrap().dim());
    }
}

#[test]
fn closure_at_higher_exponent() {
    // p^x congruences for x = 2 are closed as well
    let spec = GreenOrderSpec::new(5, 4, 2, 6, true).unwrap();
    let out = closure_trials(&spec, 300, 7, Exec::Parallel).unwrap();
    assert_eq!(out.failures, 0);
}
