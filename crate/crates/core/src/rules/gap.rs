//! Basement bubbles, final bubbles, and the empty cell gap rule.
//!
//! Every row carries an implicit basement bubble in column 0. Basements only
//! take part here: they can open a gap and they can be a row's final bubble.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Rule, RuleReport, Witness};
use crate::diagram::{Cell, Diagram};

/// The region below a horizontal gap.
///
/// A gap of `gap_len` empty cells between bubbles at `(row, col_lo)` and
/// `anchor = (row, col_lo + gap_len + 1)` spans columns `col_lo..=col_hi`
/// (with `col_hi = col_lo + gap_len`) in rows `1..=row_max`
/// (`row_max = row - 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapBox {
    pub anchor: Cell,
    pub col_lo: usize,
    pub col_hi: usize,
    pub row_max: usize,
    pub gap_len: usize,
    pub finals_found: usize,
}

impl GapBox {
    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.row <= self.row_max && (self.col_lo..=self.col_hi).contains(&cell.col)
    }

    pub fn is_satisfied(&self) -> bool {
        self.finals_found == self.gap_len
    }
}

/// Rightmost bubble of every row from 1 to the highest occupied row, with
/// empty rows contributing their basement cell `(row, 0)`.
pub fn final_bubbles(d: &Diagram) -> BTreeSet<Cell> {
    (1..=d.max_row())
        .map(|row| Cell::new(row, d.row(row).next_back().unwrap_or(0)))
        .collect()
}

/// Every gap box of `d`, row by row and left to right.
pub fn gap_boxes(d: &Diagram) -> Vec<GapBox> {
    let finals = final_bubbles(d);
    let max_row = d.max_row();
    let mut boxes = Vec::new();
    for row in 1..=max_row {
        let mut prev = 0;
        for col in d.row(row) {
            let gap_len = col - prev - 1;
            if gap_len >= 1 {
                let mut gap = GapBox {
                    anchor: Cell::new(row, col),
                    col_lo: prev,
                    col_hi: prev + gap_len,
                    row_max: row - 1,
                    gap_len,
                    finals_found: 0,
                };
                debug_assert!(gap.row_max < max_row);
                gap.finals_found = finals.iter().filter(|&&f| gap.contains(f)).count();
                boxes.push(gap);
            }
            prev = col;
        }
    }
    boxes
}

/// Empty cell gap rule: a gap of `n` empty cells has exactly `n` final
/// bubbles in its box. Witnesses are the boxes with the wrong count.
pub fn check_empty_cell_gap(d: &Diagram) -> RuleReport {
    let witnesses = gap_boxes(d)
        .into_iter()
        .filter(|b| !b.is_satisfied())
        .map(Witness::Gap)
        .collect();
    RuleReport::new(Rule::EmptyCellGap, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{dotted_not_numbered, numbered_not_dotted, rothe_152869347};

    fn cells(pairs: &[(usize, usize)]) -> BTreeSet<Cell> {
        pairs.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn final_bubble_examples() {
        assert_eq!(
            final_bubbles(&rothe_152869347()),
            cells(&[(1, 0), (2, 4), (3, 0), (4, 7), (5, 4), (6, 7)])
        );
        assert!(final_bubbles(&Diagram::new()).is_empty());
        assert_eq!(
            final_bubbles(&numbered_not_dotted()),
            cells(&[(1, 1), (2, 2)])
        );
        assert_eq!(
            final_bubbles(&Diagram::from_pairs([(3, 2)])),
            cells(&[(1, 0), (2, 0), (3, 2)])
        );
    }

    #[test]
    fn sample_boxes() {
        let boxes = gap_boxes(&rothe_152869347());
        let summary: Vec<_> = boxes
            .iter()
            .map(|b| {
                (
                    (b.anchor.row, b.anchor.col),
                    b.col_lo,
                    b.col_hi,
                    b.gap_len,
                    b.finals_found,
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                ((2, 2), 0, 1, 1, 1),
                ((4, 3), 0, 2, 2, 2),
                ((4, 6), 4, 5, 1, 1),
                ((5, 3), 0, 2, 2, 2),
                ((6, 3), 0, 2, 2, 2),
                ((6, 7), 4, 6, 2, 2),
            ]
        );
        assert!(check_empty_cell_gap(&rothe_152869347()).holds);
    }

    #[test]
    fn single_box_examples() {
        let boxes = gap_boxes(&numbered_not_dotted());
        assert_eq!(boxes.len(), 1);
        assert_eq!(boxes[0].anchor, Cell::new(2, 2));
        assert_eq!(boxes[0].finals_found, 1);
        assert!(check_empty_cell_gap(&numbered_not_dotted()).holds);

        let r = check_empty_cell_gap(&dotted_not_numbered());
        assert!(!r.holds);
        let Witness::Gap(b) = &r.witnesses[0] else {
            panic!("expected a gap witness");
        };
        assert_eq!(
            (b.anchor, b.row_max, b.gap_len, b.finals_found),
            (Cell::new(1, 2), 0, 1, 0)
        );
    }

    #[test]
    fn gaps_after_the_final_bubble_do_not_count() {
        assert!(check_empty_cell_gap(&Diagram::from_pairs([(1, 1), (1, 2)])).holds);
        assert!(gap_boxes(&Diagram::from_pairs([(1, 1)])).is_empty());
    }

    #[test]
    fn gap_box_json() {
        let b = &gap_boxes(&dotted_not_numbered())[0];
        assert_eq!(
            serde_json::to_string(b).unwrap(),
            r#"{"anchor":[1,2],"col_lo":0,"col_hi":1,"row_max":0,"gap_len":1,"finals_found":0}"#
        );
    }
}
