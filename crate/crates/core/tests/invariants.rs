//! Exhaustive invariants at small sizes, checked against plain re-derivations.

use std::collections::{BTreeMap, BTreeSet};

use rothe::oracle::{
    enumerate_codes, enumerate_grid_diagrams, enumerate_permutations, grid_range,
    placement_search_bound, popping_gap_solutions, rothe_placements, split_range,
    verify_code_builders, verify_equivalence, verify_equivalence_parallel, verify_lehmer_bijection,
    verify_rothe_properties, OracleError,
};
use rothe::rules::{
    check_dot_rule, check_horizontal_popping, check_vertical_popping, column_dots,
    horizontal_numbering, row_dots, vertical_numbering, GapBox,
};
use rothe::{
    check_rule, classify, lehmer_code, permutation_from_lehmer, recover_permutation, rothe_diagram,
    rothe_via_death_rays, row_counts, Cell, Diagram, FreeColumns, Rule, Witness,
};

fn each_permutation(max_n: usize, mut f: impl FnMut(&rothe::Permutation, usize)) {
    for n in 1..=max_n {
        for w in enumerate_permutations(n).unwrap() {
            f(&w, n);
        }
    }
}

#[test]
fn diagram_constructions_agree_up_to_7() {
    each_permutation(7, |w, n| {
        let d = rothe_diagram(w);
        assert_eq!(rothe_via_death_rays(w), d, "{w}");
        assert_eq!(row_counts(&d), lehmer_code(w), "{w}");
        assert!(
            d.cells().all(|c| c.row < n && c.col < n),
            "{w} leaves the box"
        );
        assert_eq!(permutation_from_lehmer(&lehmer_code(w)), *w);
        assert_eq!(recover_permutation(&d).as_ref(), Some(w));
    });
}

#[test]
fn codes_round_trip() {
    for code in enumerate_codes(3, 4) {
        assert_eq!(lehmer_code(&permutation_from_lehmer(&code)), code);
    }
}

#[test]
fn dots_and_numberings_on_rothe_diagrams() {
    each_permutation(6, |w, _| {
        let d = rothe_diagram(w);
        let rows = row_dots(&d).unwrap();
        assert_eq!(rows, column_dots(&d).unwrap(), "{w}");
        for (i, dot) in rows.dots().iter().enumerate() {
            assert_eq!(*dot, Cell::new(i + 1, w.apply(i + 1)));
        }
        assert_eq!(horizontal_numbering(&d), vertical_numbering(&d), "{w}");
    });
}

#[test]
fn dot_rule_iff_both_poppings_on_4x4() {
    for d in enumerate_grid_diagrams(4, 4).unwrap() {
        let dot = check_dot_rule(&d).unwrap().holds;
        let popping = check_vertical_popping(&d).unwrap().holds
            && check_horizontal_popping(&d).unwrap().holds;
        assert_eq!(dot, popping, "{d:?}");
    }
}

#[test]
fn characterizations_agree_on_3x3() {
    let r = verify_equivalence(3, 3).unwrap();
    assert_eq!(r.diagrams, 512);
    assert!(r.agrees(), "{:?}", r.counterexamples);
    assert!(r.counts.values().all(|&v| v == r.counts["rothe"]));
}

#[test]
fn characterizations_agree_on_small_rectangles() {
    for (rows, cols) in [(1, 4), (4, 1), (2, 3), (3, 2), (2, 4)] {
        let r = verify_equivalence(rows, cols).unwrap();
        assert!(r.agrees(), "{rows}x{cols}: {:?}", r.counterexamples);
    }
}

#[test]
fn oracle_reports_pass() {
    for n in 1..=6 {
        assert!(verify_lehmer_bijection(n).unwrap().all_passed(), "n = {n}");
        let p = verify_rothe_properties(n).unwrap();
        assert!(p.all_passed(), "n = {n}: {:?}", p.failures);
    }
    assert!(verify_code_builders(3, 4).all_passed());
}

#[test]
fn partition_merge_matches_serial() {
    let strip = |mut r: rothe::oracle::EquivalenceReport| {
        r.elapsed_ms = 0;
        serde_json::to_string(&r).unwrap()
    };
    let serial = strip(verify_equivalence(3, 3).unwrap());
    for jobs in [1, 2, 3, 7, 600] {
        assert_eq!(
            strip(verify_equivalence_parallel(3, 3, jobs).unwrap()),
            serial,
            "jobs = {jobs}"
        );
    }
    assert_eq!(strip(verify_equivalence(3, 3).unwrap()), serial);
}

#[test]
fn grid_ranges_partition_the_stream() {
    let all: Vec<_> = enumerate_grid_diagrams(2, 3).unwrap().collect();
    let pieces: Vec<_> = split_range(64, 5)
        .into_iter()
        .flat_map(|r| grid_range(3, r))
        .collect();
    assert_eq!(all, pieces);
    let distinct: BTreeSet<_> = all.iter().collect();
    assert_eq!(distinct.len(), 64);
}

#[test]
fn guards() {
    assert!(matches!(
        enumerate_permutations(10),
        Err(OracleError::PermutationBound { n: 10 })
    ));
    assert!(matches!(
        enumerate_grid_diagrams(5, 6),
        Err(OracleError::GridBound { .. })
    ));
    assert!(verify_equivalence(6, 6).is_err());
    assert!(verify_lehmer_bijection(0).is_err());
    assert_eq!(enumerate_permutations(9).unwrap().len(), 362_880);
}

#[test]
fn popping_and_gap_single_out_rothe_diagrams_in_s6() {
    for w in enumerate_permutations(6).unwrap() {
        let sols = popping_gap_solutions(&lehmer_code(&w), 5, 5).unwrap();
        assert_eq!(sols, vec![rothe_diagram(&w)], "{w}");
    }
}

/// Nonempty columns of `d`, left to right, as free columns.
fn strip_columns(d: &Diagram) -> (FreeColumns, Vec<usize>) {
    let mut by_col: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in d.cells() {
        by_col.entry(c.col).or_default().push(c.row);
    }
    let positions = by_col.keys().copied().collect();
    (FreeColumns::new(by_col.into_values()).unwrap(), positions)
}

#[test]
fn stripped_rothe_columns_place_back() {
    each_permutation(6, |w, _| {
        let d = rothe_diagram(w);
        let (cols, positions) = strip_columns(&d);
        let (placement, placed) = rothe::place_free_columns(&cols).expect("placeable");
        assert_eq!(placement.positions(), positions.as_slice(), "{w}");
        assert_eq!(placed, d);
    });
}

#[test]
fn free_placement_matches_exhaustive_search() {
    // Every collection of at most two columns with rows in 1..=3.
    let subsets: Vec<Vec<usize>> = (1u8..8)
        .map(|m| (1..=3).filter(|r| m >> (r - 1) & 1 == 1).collect())
        .collect();
    let mut collections: Vec<Vec<Vec<usize>>> = vec![vec![]];
    collections.extend(subsets.iter().map(|a| vec![a.clone()]));
    for a in &subsets {
        for b in &subsets {
            collections.push(vec![a.clone(), b.clone()]);
        }
    }
    for cols in collections {
        let c = FreeColumns::new(cols.clone()).unwrap();
        let found = rothe_placements(&c, placement_search_bound(&c) + 2);
        match rothe::place_free_columns(&c) {
            Some((p, d)) => {
                assert_eq!(found, vec![p.clone()], "{cols:?}");
                assert!(classify(&d).unwrap().all_hold());
                for (j, rows) in c.columns().iter().enumerate() {
                    let col: BTreeSet<usize> = d.column(p.positions()[j]).collect();
                    assert_eq!(&col, rows);
                }
            }
            None => assert!(found.is_empty(), "{cols:?} has {found:?}"),
        }
    }
}

fn labels_by_definition(d: &Diagram) -> (BTreeMap<Cell, usize>, BTreeMap<Cell, usize>) {
    let mut h = BTreeMap::new();
    let mut v = BTreeMap::new();
    for c in d.cells() {
        h.insert(
            c,
            c.row
                + d.cells()
                    .filter(|b| b.row == c.row && b.col < c.col)
                    .count(),
        );
        v.insert(
            c,
            c.col
                + d.cells()
                    .filter(|b| b.col == c.col && b.row < c.row)
                    .count(),
        );
    }
    (h, v)
}

fn finals_by_definition(d: &Diagram) -> Vec<Cell> {
    (1..=d.max_row())
        .map(|r| {
            Cell::new(
                r,
                d.cells()
                    .filter(|c| c.row == r)
                    .map(|c| c.col)
                    .max()
                    .unwrap_or(0),
            )
        })
        .collect()
}

/// Re-checks one witness against the rule's definition.
fn violates(rule: Rule, d: &Diagram, w: &Witness) -> bool {
    let rows = row_dots(d).unwrap();
    let cols = column_dots(d).unwrap();
    let (h, v) = labels_by_definition(d);
    match (rule, w) {
        (Rule::Southwest, Witness::Pair(a, b)) => {
            d.contains(*a)
                && d.contains(*b)
                && !d.contains(Cell::new(a.row.min(b.row), a.col.min(b.col)))
        }
        (Rule::Dot, Witness::Pair(a, b)) => {
            a.row == b.row && rows.in_row(a.row) == *a && cols.in_row(b.row) == *b && a != b
        }
        (Rule::VerticalPopping, Witness::Pair(bubble, dot)) => {
            d.contains(*bubble)
                && rows.contains(*dot)
                && bubble.col == dot.col
                && bubble.row > dot.row
        }
        (Rule::HorizontalPopping, Witness::Pair(bubble, dot)) => {
            d.contains(*bubble)
                && cols.contains(*dot)
                && bubble.row == dot.row
                && bubble.col > dot.col
        }
        (Rule::Numbering, Witness::Cell(c)) => h[c] != v[c],
        (Rule::StepOut, Witness::Pair(a, b)) => h[b] == h[a] + 1 && b.row > a.row && b.col > a.col,
        (Rule::EmptyCellGap, Witness::Gap(g)) => gap_violates(d, g),
        (Rule::Rothe, Witness::Cell(c)) => {
            d.contains(*c) != rothe_diagram(&rows.permutation()).contains(*c)
        }
        _ => false,
    }
}

fn gap_violates(d: &Diagram, g: &GapBox) -> bool {
    let row = g.anchor.row;
    let left_ok = g.col_lo == 0 || d.has(row, g.col_lo);
    let empty = (g.col_lo + 1..g.anchor.col).all(|c| !d.has(row, c));
    let n = g.anchor.col - g.col_lo - 1;
    let finals = finals_by_definition(d)
        .into_iter()
        .filter(|f| f.row < row && f.col >= g.col_lo && f.col <= g.col_lo + n)
        .count();
    d.contains(g.anchor) && left_ok && empty && n >= 1 && n == g.gap_len && finals != n
}

#[test]
fn witnesses_are_sound_on_3x3() {
    for d in enumerate_grid_diagrams(3, 3).unwrap() {
        for rule in Rule::DIAGRAM_RULES {
            let Ok(report) = check_rule(rule, &d) else {
                assert_eq!(rule, Rule::StepOut);
                continue;
            };
            assert_eq!(report.holds, report.witnesses.is_empty());
            for w in &report.witnesses {
                assert!(violates(rule, &d, w), "{rule} witness {w:?} on {d:?}");
            }
        }
    }
}

#[test]
fn numbering_agrees_with_definition() {
    for d in enumerate_grid_diagrams(3, 3).unwrap() {
        let (h, v) = labels_by_definition(&d);
        let hl: BTreeMap<_, _> = horizontal_numbering(&d).iter().collect();
        let vl: BTreeMap<_, _> = vertical_numbering(&d).iter().collect();
        assert_eq!((hl, vl), (h, v));
    }
}
