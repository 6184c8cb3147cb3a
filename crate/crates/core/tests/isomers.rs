//! S,T-isomer identities on random cuts and chain flips.

mod common;

use kch_core::extremal::{enumerate, size_vectors, DEFAULT_CAP};
use kch_core::isomer::{cut_difference_check, eligible_flips, flip_check, rung_flanking_cuts, st_flip};
use kch_core::kirchhoff::kirchhoff_index;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cut_difference_matches_direct(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (net, cut) = common::random_cut(&mut rng, 12);
        let report = cut_difference_check(&net, &cut).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        let back = st_flip(&st_flip(&net, &cut).unwrap(), &cut.reverse()).unwrap();
        prop_assert_eq!(back, net);
    }

    #[test]
    fn flip_preserves_size(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (net, cut) = common::random_cut(&mut rng, 10);
        let t = st_flip(&net, &cut).unwrap();
        prop_assert_eq!(t.nodes(), net.nodes());
        prop_assert_eq!(t.edge_count(), net.edge_count());
        prop_assert!(t.is_connected());
        prop_assert_eq!(kirchhoff_index(&net).unwrap() - kirchhoff_index(&t).unwrap(),
            kch_core::isomer::kf_delta(&net, &cut).unwrap());
    }
}

#[test]
fn chain_flips_increase_kf() {
    for n in 3..=4 {
        for sizes in size_vectors(n, 4..=6) {
            for spec in enumerate(&sizes, DEFAULT_CAP).unwrap() {
                for (i, d) in eligible_flips(&spec) {
                    let r = flip_check(&spec, i, d).unwrap();
                    assert!(r.passed(), "{r:?}");
                }
                let net = spec.build_graph().to_network();
                for cut in rung_flanking_cuts(&spec.build_graph()).unwrap() {
                    assert!(cut_difference_check(&net, &cut).unwrap().holds);
                }
            }
        }
    }
}
