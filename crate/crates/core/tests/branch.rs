use eisk3_core::branch::{
    catalog, classify, degeneration_chain, family_dimension, invariants, node_count, InvariantPair, CATALOG_RANKS,
};
use eisk3_core::BranchConfig;
use proptest::prelude::*;

#[test]
fn catalog_round_trips_through_json() {
    for r in CATALOG_RANKS {
        let cfg = catalog(r).unwrap();
        let s = serde_json::to_string(&cfg).unwrap();
        assert_eq!(BranchConfig::from_json(&s).unwrap(), cfg, "{s}");
    }
}

#[test]
fn catalog_lies_on_the_extremal_lines() {
    for r in CATALOG_RANKS {
        let inv = invariants(&catalog(r).unwrap());
        let region = classify(inv.r, inv.a);
        assert!(region.in_region && region.on_extremal_line(), "{r}");
        assert_eq!(family_dimension(&catalog(r).unwrap()), 10 - r / 2);
    }
}

#[test]
fn chain_links_catalog_entries() {
    let chain = degeneration_chain();
    assert_eq!(chain.len(), 8);
    for e in &chain {
        let (s, g) = (invariants(&catalog(e.special).unwrap()), invariants(&catalog(e.general).unwrap()));
        assert_eq!(s.r, g.r + 2);
    }
}

#[test]
fn bidegree_11_meets_22_in_four_points() {
    let cfg = BranchConfig::from_json(r#"{"components":[{"d1":1,"d2":1},{"d1":2,"d2":2}]}"#).unwrap();
    assert_eq!(node_count(&cfg), 4);
    assert_eq!(invariants(&cfg), InvariantPair { r: 10, a: 4, n: 4, k: 2 });
}

proptest! {
    #[test]
    fn counts_determine_invariants(n in 0i64..40, k in 1i64..8) {
        let inv = InvariantPair::from_counts(n, k).unwrap();
        prop_assert_eq!(inv.r, 2 * n + 2);
        prop_assert_eq!(inv.a, n + 4 - 2 * k);
        prop_assert_eq!(inv.r % 2, 0);
    }
}
