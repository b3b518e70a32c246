//! Southwest closure.

use super::{Rule, RuleReport, Witness};
use crate::diagram::{Cell, Diagram};

/// A diagram is southwest when any two bubbles `(i, j)`, `(i', j')` force a
/// bubble at `(min(i, i'), min(j, j'))`. Witnesses are the offending pairs,
/// each listed once with the lower-right bubble first.
pub fn check_southwest(d: &Diagram) -> RuleReport {
    let cells: Vec<Cell> = d.cells().collect();
    let mut witnesses = Vec::new();
    for (k, &a) in cells.iter().enumerate() {
        for &b in &cells[k + 1..] {
            let corner = Cell::new(a.row.min(b.row), a.col.min(b.col));
            if !d.contains(corner) {
                witnesses.push(Witness::Pair(a, b));
            }
        }
    }
    RuleReport::new(Rule::Southwest, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{dotted_not_numbered, rothe_152869347};

    #[test]
    fn examples() {
        assert!(check_southwest(&rothe_152869347()).holds);
        assert!(check_southwest(&Diagram::from_pairs([(3, 5)])).holds);
        assert!(check_southwest(&Diagram::new()).holds);

        let r = check_southwest(&dotted_not_numbered());
        assert_eq!(
            r.witnesses,
            vec![Witness::Pair(Cell::new(1, 2), Cell::new(2, 1))]
        );
    }

    #[test]
    fn comparable_cells_never_violate() {
        // Same row or same column: the corner is one of the two cells.
        assert!(check_southwest(&Diagram::from_pairs([(1, 1), (1, 4), (3, 1)])).holds);
        assert!(!check_southwest(&Diagram::from_pairs([(1, 4), (3, 1)])).holds);
    }
}
