mod common;

use common::{build_store, contributions};
use proptest::prelude::*;
use scikg::graph::Graph;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn subgraph_grows_with_depth(shape in contributions(1, 4, 8), d in 1usize..6) {
        let (g, ids) = build_store(&shape);
        for c in ids {
            let shallow: std::collections::BTreeSet<_> = g.subgraph(c, d).unwrap().statements.iter().map(|s| s.id).collect();
            let deep: std::collections::BTreeSet<_> = g.subgraph(c, d + 1).unwrap().statements.iter().map(|s| s.id).collect();
            prop_assert!(shallow.is_subset(&deep));
        }
    }

    #[test]
    fn dump_round_trip(shape in contributions(1, 4, 8)) {
        let (g, _) = build_store(&shape);
        let dump = g.dump_string();
        let back = Graph::read_dump(dump.as_bytes()).unwrap();
        prop_assert_eq!(back.dump_string(), dump);
        prop_assert_eq!(back.next_ids(), g.next_ids());
    }

    #[test]
    fn ids_never_reused(labels in prop::collection::vec("[a-z]{1,6}", 1..20)) {
        let mut g = Graph::new();
        let mut seen = std::collections::HashSet::new();
        for l in labels {
            let r = g.create_resource(&l, [] as [&str; 0]).unwrap().id;
            prop_assert!(seen.insert(r));
            g.delete_node(r).unwrap();
        }
    }
}
