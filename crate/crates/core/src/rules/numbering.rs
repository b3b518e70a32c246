//! Horizontal and vertical numberings, and step-outs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Rule, RuleError, RuleReport, Witness};
use crate::diagram::{Cell, Diagram};

/// A label on every bubble of a diagram.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    labels: BTreeMap<Cell, usize>,
}

impl Labeling {
    pub fn get(&self, cell: Cell) -> Option<usize> {
        self.labels.get(&cell).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.labels.iter().map(|(&c, &l)| (c, l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn max_label(&self) -> Option<usize> {
        self.labels.values().copied().max()
    }
}

/// Row `i` labels its bubbles `i, i+1, ...` from left to right.
pub fn horizontal_numbering(d: &Diagram) -> Labeling {
    let mut labels = BTreeMap::new();
    let mut row = 0;
    let mut next = 0;
    for cell in d.cells() {
        if cell.row != row {
            row = cell.row;
            next = row;
        }
        labels.insert(cell, next);
        next += 1;
    }
    Labeling { labels }
}

/// Column `j` labels its bubbles `j, j+1, ...` from bottom to top.
pub fn vertical_numbering(d: &Diagram) -> Labeling {
    let mut by_column: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for cell in d.cells() {
        by_column.entry(cell.col).or_default().push(cell.row);
    }
    let labels = by_column
        .into_iter()
        .flat_map(|(col, rows)| {
            rows.into_iter()
                .enumerate()
                .map(move |(k, row)| (Cell::new(row, col), col + k))
        })
        .collect();
    Labeling { labels }
}

/// Numbering condition: both numberings agree on every bubble. Witnesses are
/// the bubbles where they differ.
pub fn check_numbering(d: &Diagram) -> RuleReport {
    let h = horizontal_numbering(d);
    let v = vertical_numbering(d);
    let witnesses = h
        .iter()
        .filter(|&(cell, label)| v.get(cell) != Some(label))
        .map(|(cell, _)| Witness::Cell(cell))
        .collect();
    RuleReport::new(Rule::Numbering, witnesses)
}

/// Step-outs of an enumerated diagram: bubbles labeled `n` and `n + 1` with
/// the second strictly north-east of the first. Witnesses are
/// `(label n, label n + 1)` pairs.
pub fn find_step_outs(d: &Diagram) -> Result<RuleReport, RuleError> {
    if !check_numbering(d).holds {
        return Err(RuleError::NotEnumerated);
    }
    let labels = horizontal_numbering(d);
    Ok(RuleReport::new(
        Rule::StepOut,
        step_out_pairs(labels.iter()),
    ))
}

/// Pairs `(a, b)` with `label(b) = label(a) + 1` and `b` strictly north-east
/// of `a`, sorted.
pub(crate) fn step_out_pairs(labeled: impl Iterator<Item = (Cell, usize)>) -> Vec<Witness> {
    let mut by_label: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for (cell, label) in labeled {
        by_label.entry(label).or_default().push(cell);
    }
    let mut witnesses = Vec::new();
    for (label, lower) in &by_label {
        let Some(upper) = by_label.get(&(label + 1)) else {
            continue;
        };
        for &a in lower {
            for &b in upper {
                if b.is_strictly_northeast_of(a) {
                    witnesses.push(Witness::Pair(a, b));
                }
            }
        }
    }
    witnesses.sort();
    witnesses
}
