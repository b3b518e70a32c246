//! Building diagrams from row counts, and placing free columns.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Cell, Diagram};
use crate::permutation::LehmerCode;
use crate::rules::numbering::step_out_pairs;
use crate::rules::{Rule, RuleError, RuleReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("no column can take label {label} in row {row}")]
    NoFeasibleColumn { row: usize, label: usize },
    #[error("free column {index} is empty")]
    EmptyColumn { index: usize },
    #[error("free column {index} contains row 0")]
    ZeroRow { index: usize },
    #[error("placement positions must be positive and strictly increasing")]
    NotIncreasing,
}

/// Builds the unique Rothe diagram with the given row counts.
///
/// Rows are filled bottom to top. Row `i` takes its `a_i` bubbles in the
/// leftmost columns that hold no dot from a lower row, then puts its own dot
/// in the next such column.
pub fn build_from_row_counts(code: &LehmerCode) -> Diagram {
    let mut dotted = BTreeSet::new();
    let mut d = Diagram::new();
    for (idx, &count) in code.counts().iter().enumerate() {
        let row = idx + 1;
        let mut free = (1..).filter(|c| !dotted.contains(c));
        for col in free.by_ref().take(count) {
            d.insert(Cell::new(row, col));
        }
        let dot = free.next().unwrap();
        dotted.insert(dot);
    }
    d
}

/// Builds the unique enumerated, step-out avoiding diagram with the given row
/// counts.
///
/// The `k`-th bubble of row `i` must carry label `i + k - 1`. It goes in the
/// leftmost column right of the row's previous bubble whose next vertical
/// label (column index plus current height) equals that label.
pub fn build_stepout_avoiding(code: &LehmerCode) -> Result<Diagram, ReconstructError> {
    let mut heights: BTreeMap<usize, usize> = BTreeMap::new();
    let mut d = Diagram::new();
    for (idx, &count) in code.counts().iter().enumerate() {
        let row = idx + 1;
        let mut prev = 0;
        for k in 0..count {
            let label = row + k;
            // Vertical label is col + height ≥ col, so col ≤ label.
            let col = ((prev + 1)..=label)
                .find(|c| c + heights.get(c).copied().unwrap_or(0) == label)
                .ok_or(ReconstructError::NoFeasibleColumn { row, label })?;
            *heights.entry(col).or_default() += 1;
            d.insert(Cell::new(row, col));
            prev = col;
        }
    }
    Ok(d)
}

/// An ordered collection of nonempty columns awaiting horizontal placement.
///
/// JSON: `{"columns": [[1,2],[2,4,5],[2],[5]]}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FreeColumnsRepr", into = "FreeColumnsRepr")]
pub struct FreeColumns {
    columns: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FreeColumnsRepr {
    columns: Vec<Vec<usize>>,
}

impl TryFrom<FreeColumnsRepr> for FreeColumns {
    type Error = ReconstructError;

    fn try_from(repr: FreeColumnsRepr) -> Result<Self, Self::Error> {
        FreeColumns::new(repr.columns)
    }
}

impl From<FreeColumns> for FreeColumnsRepr {
    fn from(c: FreeColumns) -> Self {
        FreeColumnsRepr {
            columns: c
                .columns
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        }
    }
}

impl FreeColumns {
    pub fn new<I, C>(columns: I) -> Result<Self, ReconstructError>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = usize>,
    {
        let mut out = Vec::new();
        for (idx, col) in columns.into_iter().enumerate() {
            let set: BTreeSet<usize> = col.into_iter().collect();
            let index = idx + 1;
            if set.is_empty() {
                return Err(ReconstructError::EmptyColumn { index });
            }
            if set.contains(&0) {
                return Err(ReconstructError::ZeroRow { index });
            }
            out.push(set);
        }
        Ok(Self { columns: out })
    }

    pub fn columns(&self) -> &[BTreeSet<usize>] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn bubble_count(&self) -> usize {
        self.columns.iter().map(BTreeSet::len).sum()
    }

    pub fn max_row(&self) -> usize {
        self.columns
            .iter()
            .filter_map(|c| c.last().copied())
            .max()
            .unwrap_or(0)
    }

    /// The bubbles with their column index standing in for the column, so
    /// `(row, j)` is a bubble of the `j`-th free column (1-based).
    pub fn indexed_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, rows)| rows.iter().map(move |&r| Cell::new(r, j + 1)))
    }

    /// Horizontal numbering: row `i` labels its bubbles across the columns
    /// `i, i+1, ...` from left to right. Keys are indexed cells.
    pub fn horizontal_numbering(&self) -> BTreeMap<Cell, usize> {
        let mut cells: Vec<Cell> = self.indexed_cells().collect();
        cells.sort_unstable();
        let mut labels = BTreeMap::new();
        let (mut row, mut next) = (0, 0);
        for cell in cells {
            if cell.row != row {
                row = cell.row;
                next = row;
            }
            labels.insert(cell, next);
            next += 1;
        }
        labels
    }

    /// Places column `j` at `placement.positions()[j]`.
    pub fn place(&self, placement: &Placement) -> Diagram {
        assert_eq!(placement.len(), self.len(), "placement length mismatch");
        self.columns
            .iter()
            .zip(placement.positions())
            .flat_map(|(rows, &col)| rows.iter().map(move |&r| Cell::new(r, col)))
            .collect()
    }
}

/// Strictly increasing column positions, one per free column.
///
/// JSON: `{"positions": [1,3,4,6]}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlacementRepr", into = "PlacementRepr")]
pub struct Placement {
    positions: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PlacementRepr {
    positions: Vec<usize>,
}

impl TryFrom<PlacementRepr> for Placement {
    type Error = ReconstructError;

    fn try_from(repr: PlacementRepr) -> Result<Self, Self::Error> {
        Placement::new(repr.positions)
    }
}

impl From<Placement> for PlacementRepr {
    fn from(p: Placement) -> Self {
        PlacementRepr {
            positions: p.positions,
        }
    }
}

impl Placement {
    pub fn new(positions: Vec<usize>) -> Result<Self, ReconstructError> {
        let increasing = positions.first().map_or(true, |&p| p >= 1)
            && positions.windows(2).all(|w| w[0] < w[1]);
        if !increasing {
            return Err(ReconstructError::NotIncreasing);
        }
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Numbering condition for free columns: each column's labels, read bottom
/// to top, form an unbroken run, and the runs start at strictly increasing
/// values from left to right.
///
/// Witnesses are indexed cells: a bubble that breaks its column's run, or the
/// lowest bubble of a column whose run does not start above the previous one.
pub fn check_free_numbering(c: &FreeColumns) -> RuleReport {
    let labels = c.horizontal_numbering();
    let mut witnesses = Vec::new();
    let mut prev_start: Option<usize> = None;
    for (j, rows) in c.columns().iter().enumerate() {
        let col = j + 1;
        let column_labels: Vec<(Cell, usize)> = rows
            .iter()
            .map(|&r| {
                let cell = Cell::new(r, col);
                (cell, labels[&cell])
            })
            .collect();
        let (lowest, start) = column_labels[0];
        for (k, &(cell, label)) in column_labels.iter().enumerate() {
            if label != start + k {
                witnesses.push(Witness::Cell(cell));
            }
        }
        if prev_start.is_some_and(|p| start <= p) {
            witnesses.push(Witness::Cell(lowest));
        }
        prev_start = Some(start);
    }
    witnesses.sort();
    witnesses.dedup();
    RuleReport::new(Rule::FreeNumbering, witnesses)
}

/// Starting label of each column's run.
pub fn free_column_starts(c: &FreeColumns) -> Vec<usize> {
    let labels = c.horizontal_numbering();
    c.columns()
        .iter()
        .enumerate()
        .map(|(j, rows)| labels[&Cell::new(*rows.first().unwrap(), j + 1)])
        .collect()
}

/// Step-outs of an enumerated collection: a bubble labeled `n` and a bubble
/// labeled `n + 1` in a strictly later column and strictly higher row.
/// Witnesses are pairs of indexed cells.
pub fn find_free_step_outs(c: &FreeColumns) -> Result<RuleReport, RuleError> {
    if !check_free_numbering(c).holds {
        return Err(RuleError::NotEnumerated);
    }
    let labels = c.horizontal_numbering();
    Ok(RuleReport::new(
        Rule::FreeStepOut,
        step_out_pairs(labels.into_iter()),
    ))
}

/// The unique placement of `c` giving a Rothe diagram, if there is one.
///
/// Column `j` goes to the label of its lowest bubble.
pub fn place_free_columns(c: &FreeColumns) -> Option<(Placement, Diagram)> {
    if !find_free_step_outs(c).ok()?.holds {
        return None;
    }
    let placement = Placement::new(free_column_starts(c)).expect("starts strictly increase");
    let diagram = c.place(&placement);
    Some((placement, diagram))
}
