mod common;

use bacomp::format::{parse_ba_with_alphabet, parse_hoa, serialize_ba, serialize_hoa};
use bacomp::lasso::accepts_lasso;
use bacomp::oracle::{gen_random_ba, gen_random_iw, gen_random_sdba, RandomParams};
use bacomp::pipeline::{check, complement, remove_useless, LassoBounds, PipelineConfig};
use bacomp::product::{intersection_empty, Intersection};
use bacomp::{BuchiAutomaton, Lasso};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = RandomParams> {
    (1usize..7, 1usize..3, 0.5f64..2.0, 0.2f64..0.8)
        .prop_map(|(n, k, td, ad)| RandomParams::new(n, k, td.min(n as f64), ad))
}

fn random_ba() -> impl Strategy<Value = BuchiAutomaton> {
    (any::<u64>(), params()).prop_map(|(seed, p)| gen_random_ba(seed, p).unwrap())
}

fn lasso(k: usize) -> impl Strategy<Value = Lasso> {
    (
        prop::collection::vec(0..k, 0..4),
        prop::collection::vec(0..k, 1..4),
    )
        .prop_map(|(u, v)| Lasso::new(u, v).unwrap())
}

fn with_lasso() -> impl Strategy<Value = (BuchiAutomaton, Lasso)> {
    random_ba().prop_flat_map(|a| {
        let k = a.num_symbols();
        (Just(a), lasso(k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_matches_oracle((a, w) in with_lasso()) {
        let expected = common::accepts(&a, &w.prefix, &w.period);
        prop_assert_eq!(accepts_lasso(&a, &w).unwrap(), expected);
        prop_assert_eq!(accepts_lasso(&a, &w.unroll_prefix()).unwrap(), expected);
        prop_assert_eq!(accepts_lasso(&a, &w.double_period()).unwrap(), expected);
    }

    #[test]
    fn formats_round_trip(a in random_ba()) {
        prop_assert_eq!(parse_hoa(&serialize_hoa(&a)).unwrap(), a.clone());
        if a.accepting_transitions().is_empty() {
            let text = serialize_ba(&a).unwrap();
            let back = parse_ba_with_alphabet(&text, a.alphabet()).unwrap();
            if a.num_transitions() > 0 {
                prop_assert_eq!(common::shape(&back), common::shape(&a));
            }
            prop_assert_eq!(common::grid_language(&back, 2, 2), common::grid_language(&a, 2, 2));
        }
    }

    #[test]
    fn intersection_is_symmetric_and_witnessed(a in random_ba(), seed in any::<u64>()) {
        let b = gen_random_ba(seed, RandomParams::new(3, a.num_symbols(), 1.5, 0.5)).unwrap();
        let ab = intersection_empty(&a, &b).unwrap();
        let ba = intersection_empty(&b, &a).unwrap();
        prop_assert_eq!(ab.is_empty(), ba.is_empty());
        if let Intersection::NonEmpty(w) = ab {
            prop_assert!(common::accepts(&a, &w.prefix, &w.period));
            prop_assert!(common::accepts(&b, &w.prefix, &w.period));
        } else {
            let (la, lb) = (common::grid_language(&a, 3, 3), common::grid_language(&b, 3, 3));
            let overlap = la.iter().flatten().zip(lb.iter().flatten()).any(|(x, y)| *x && *y);
            prop_assert!(!overlap);
        }
    }

    #[test]
    fn remove_useless_preserves_grid(a in random_ba()) {
        let r = remove_useless(&a);
        prop_assert!(r.num_states() <= a.num_states());
        prop_assert_eq!(common::grid_language(&r, 3, 3), common::grid_language(&a, 3, 3));
    }

    #[test]
    fn iw_complement_is_complement(seed in any::<u64>(), p in params()) {
        let a = gen_random_iw(seed, p).unwrap();
        let (c, _) = complement(&a, &PipelineConfig::default()).unwrap();
        prop_assert!(check(&a, &c, LassoBounds::new(3, 3).unwrap()).unwrap().is_pass());
        let (x, y) = (common::grid_language(&a, 3, 3), common::grid_language(&c, 3, 3));
        prop_assert_eq!(common::first_non_complement(a.num_symbols(), 3, 3, &x, &y), None);
    }

    #[test]
    fn sdba_complement_is_complement(seed in any::<u64>(), p in params()) {
        let a = gen_random_sdba(seed, p).unwrap();
        let Ok((c, _)) = complement(&a, &PipelineConfig::default()) else {
            return Ok(());
        };
        let (x, y) = (common::grid_language(&a, 3, 3), common::grid_language(&c, 3, 3));
        prop_assert_eq!(common::first_non_complement(a.num_symbols(), 3, 3, &x, &y), None);
    }
}
