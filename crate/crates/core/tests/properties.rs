use std::collections::BTreeSet;

use proptest::prelude::*;

use rothe::oracle::{placement_search_bound, rothe_placements};
use rothe::{
    build_from_row_counts, build_stepout_avoiding, classify, is_rothe, lehmer_code,
    parse_permutation, permutation_from_lehmer, place_free_columns, recover_permutation,
    rothe_diagram, rothe_via_death_rays, Cell, Diagram, FreeColumns, LehmerCode, Permutation,
};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::from_word(w).unwrap())
}

fn diagram(rows: usize, cols: usize) -> impl Strategy<Value = Diagram> {
    proptest::collection::btree_set((1..=rows, 1..=cols), 0..=rows * cols)
        .prop_map(|s| Diagram::from_pairs(s))
}

proptest! {
    #[test]
    fn rothe_diagrams_pass_everything(w in permutation(10)) {
        let d = rothe_diagram(&w);
        prop_assert_eq!(&rothe_via_death_rays(&w), &d);
        prop_assert!(classify(&d).unwrap().all_hold());
        prop_assert_eq!(recover_permutation(&d), Some(w.clone()));
        prop_assert_eq!(d.len(), w.inversions().count());
    }

    #[test]
    fn lehmer_round_trip(w in permutation(12)) {
        prop_assert_eq!(permutation_from_lehmer(&lehmer_code(&w)), w.clone());
        prop_assert_eq!(build_from_row_counts(&lehmer_code(&w)), rothe_diagram(&w));
    }

    #[test]
    fn builders_agree(counts in proptest::collection::vec(0usize..6, 0..7)) {
        let code = LehmerCode::new(counts);
        let greedy = build_from_row_counts(&code);
        prop_assert_eq!(build_stepout_avoiding(&code), Ok(greedy.clone()));
        let w = permutation_from_lehmer(&code);
        prop_assert_eq!(rothe_diagram(&w), greedy);
        prop_assert_eq!(lehmer_code(&w), code);
    }

    #[test]
    fn characterizations_agree(d in diagram(5, 5)) {
        let c = classify(&d).unwrap().conditions();
        prop_assert!(c.agree(), "{:?}: {:?}", d, c);
    }

    #[test]
    fn inverse_transposes(w in permutation(9)) {
        prop_assert_eq!(rothe_diagram(&w.inverse()), rothe_diagram(&w).transpose());
    }

    #[test]
    fn text_round_trip(w in permutation(12)) {
        prop_assert_eq!(parse_permutation(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn json_round_trip(d in diagram(6, 6), w in permutation(9)) {
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<Diagram>(&text).unwrap(), d);
        let text = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&text).unwrap(), w);
    }

    #[test]
    fn free_placement_is_unique(
        cols in proptest::collection::vec(proptest::collection::btree_set(1usize..=4, 1..=3), 0..=3)
    ) {
        let c = FreeColumns::new(cols).unwrap();
        let found = rothe_placements(&c, placement_search_bound(&c));
        match place_free_columns(&c) {
            Some((p, d)) => {
                prop_assert!(is_rothe(&d));
                prop_assert_eq!(found, vec![p]);
            }
            None => prop_assert!(found.is_empty()),
        }
    }
}

#[test]
fn diagram_json_rejects_bad_cells() {
    assert!(serde_json::from_str::<Diagram>(r#"{"cells":[[0,1]]}"#).is_err());
    assert!(serde_json::from_str::<Diagram>(r#"{"cells":[[1,1],[1,1]]}"#).is_err());
    let d: Diagram = serde_json::from_str(r#"{"cells":[[2,1],[1,1]]}"#).unwrap();
    let cells: BTreeSet<Cell> = d.cells().collect();
    assert_eq!(cells.len(), 2);
}
