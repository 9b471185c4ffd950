mod common;

use common::{build_store, contributions};
use proptest::prelude::*;
use scikg::similarity::{build_document, TfIdfIndex};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn own_document_ranks_first(shape in prop::collection::vec(prop::collection::vec(common::edge(), 1..6), 2..12)) {
        let (g, ids) = build_store(&shape);
        let docs: Vec<_> = ids.iter().map(|c| build_document(&g, *c).unwrap()).collect();
        let index = TfIdfIndex::<f64>::build(&docs).unwrap();
        for d in &docs {
            let hits = index.rank(d, 1, None).unwrap();
            // a contribution's title token is unique to it, so no other document can tie
            prop_assert_eq!(hits[0].contribution, d.contribution);
            prop_assert!((hits[0].score - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn insertion_order_is_irrelevant(shape in contributions(2, 10, 6), seed in any::<u64>()) {
        let (g, ids) = build_store(&shape);
        let docs: Vec<_> = ids.iter().map(|c| build_document(&g, *c).unwrap()).collect();
        let mut shuffled = docs.clone();
        let n = shuffled.len();
        for i in 0..n {
            let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) % n as u64) as usize;
            shuffled.swap(i, j);
        }
        let a = TfIdfIndex::<f64>::build(&docs).unwrap();
        let b = TfIdfIndex::<f64>::build(&shuffled).unwrap();
        for d in &docs {
            prop_assert_eq!(a.rank(d, n, None).unwrap(), b.rank(d, n, None).unwrap());
        }
    }

    #[test]
    fn scores_stay_in_unit_interval(shape in contributions(2, 8, 6)) {
        let (g, ids) = build_store(&shape);
        let docs: Vec<_> = ids.iter().map(|c| build_document(&g, *c).unwrap()).collect();
        let index = TfIdfIndex::<f32>::build(&docs).unwrap();
        for d in &docs {
            for h in index.rank(d, docs.len(), None).unwrap() {
                prop_assert!((0.0..=1.0).contains(&h.score));
            }
        }
    }
}
