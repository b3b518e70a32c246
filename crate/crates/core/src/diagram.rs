//! Cells, diagrams, and the Rothe diagram of a permutation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permutation::{LehmerCode, Permutation};
use crate::rules::dots::row_dots;

/// A cell `(row, col)` of the first quadrant. Rows are drawn on the vertical
/// axis; column `0` is the basement and never stored in a [`Diagram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Swaps row and column.
    pub const fn transpose(self) -> Self {
        Self {
            row: self.col,
            col: self.row,
        }
    }

    /// `self` lies in a strictly higher row and a strictly later column than `other`.
    pub fn is_strictly_northeast_of(self, other: Cell) -> bool {
        self.row > other.row && self.col > other.col
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Self { row, col }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("cell {0} has a zero coordinate")]
    ZeroCoordinate(Cell),
    #[error("duplicate cell {0}")]
    Duplicate(Cell),
}

/// A finite set of bubbles, each at a cell with both coordinates ≥ 1.
///
/// Iteration order is lexicographic by `(row, col)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr", into = "DiagramRepr")]
pub struct Diagram {
    cells: BTreeSet<Cell>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    cells: Vec<Cell>,
}

impl TryFrom<DiagramRepr> for Diagram {
    type Error = DiagramError;

    fn try_from(repr: DiagramRepr) -> Result<Self, Self::Error> {
        Diagram::try_from_cells(repr.cells)
    }
}

impl From<Diagram> for DiagramRepr {
    fn from(d: Diagram) -> Self {
        DiagramRepr {
            cells: d.cells.into_iter().collect(),
        }
    }
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a diagram, rejecting zero coordinates and repeated cells.
    pub fn try_from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, DiagramError> {
        let mut set = BTreeSet::new();
        for cell in cells {
            if cell.row == 0 || cell.col == 0 {
                return Err(DiagramError::ZeroCoordinate(cell));
            }
            if !set.insert(cell) {
                return Err(DiagramError::Duplicate(cell));
            }
        }
        Ok(Self { cells: set })
    }

    /// Builds a diagram from `(row, col)` pairs, merging duplicates.
    ///
    /// # Panics
    /// If a coordinate is zero.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut d = Diagram::new();
        for (row, col) in pairs {
            d.insert(Cell::new(row, col));
        }
        d
    }

    /// # Panics
    /// If a coordinate is zero.
    pub fn insert(&mut self, cell: Cell) -> bool {
        assert!(
            cell.row >= 1 && cell.col >= 1,
            "diagram cells are 1-based, got {cell}"
        );
        self.cells.insert(cell)
    }

    pub fn remove(&mut self, cell: Cell) -> bool {
        self.cells.remove(&cell)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn has(&self, row: usize, col: usize) -> bool {
        self.cells.contains(&Cell::new(row, col))
    }

    pub fn cells(&self) -> impl DoubleEndedIterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_row(&self) -> usize {
        self.cells.iter().map(|c| c.row).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> usize {
        self.cells.iter().map(|c| c.col).max().unwrap_or(0)
    }

    /// Largest coordinate appearing in any cell; `0` for the empty diagram.
    pub fn max_coord(&self) -> usize {
        self.max_row().max(self.max_col())
    }

    /// Columns holding a bubble in `row`, increasing.
    pub fn row(&self, row: usize) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.cells
            .range(Cell::new(row, 0)..=Cell::new(row, usize::MAX))
            .map(|c| c.col)
    }

    /// Rows holding a bubble in `col`, increasing.
    pub fn column(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells
            .iter()
            .filter(move |c| c.col == col)
            .map(|c| c.row)
    }

    /// Mirror across the diagonal.
    pub fn transpose(&self) -> Self {
        Self {
            cells: self.cells.iter().map(|c| c.transpose()).collect(),
        }
    }

    /// Cells in exactly one of the two diagrams.
    pub fn symmetric_difference<'a>(
        &'a self,
        other: &'a Diagram,
    ) -> impl Iterator<Item = Cell> + 'a {
        self.cells.symmetric_difference(&other.cells).copied()
    }

    /// Number of bubbles per row, trailing zeros trimmed.
    pub fn row_counts(&self) -> LehmerCode {
        let mut counts = vec![0; self.max_row()];
        for c in &self.cells {
            counts[c.row - 1] += 1;
        }
        LehmerCode::new(counts)
    }
}

impl FromIterator<Cell> for Diagram {
    fn from_iter<T: IntoIterator<Item = Cell>>(iter: T) -> Self {
        let mut d = Diagram::new();
        for c in iter {
            d.insert(c);
        }
        d
    }
}

/// The Rothe diagram `{(i, w_j) : i < j, w_i > w_j}`.
pub fn rothe_diagram(w: &Permutation) -> Diagram {
    w.inversions()
        .map(|(i, j)| Cell::new(i, w.apply(j)))
        .collect()
}

/// The Rothe diagram read off from death rays.
///
/// Every origin `(i, w_i)` shoots a ray upward and a ray rightward. The
/// surviving bubbles are the untouched cells lying left of some origin and
/// below some origin.
pub fn rothe_via_death_rays(w: &Permutation) -> Diagram {
    let n = w.len();
    if n == 0 {
        return Diagram::new();
    }
    // Origins beyond n sit on the diagonal and touch everything outside the
    // n×n box, so the grid can stop there.
    let mut touched = vec![vec![false; n + 1]; n + 1];
    for i in 1..=n {
        let c = w.apply(i);
        for row in touched.iter_mut().skip(i) {
            row[c] = true;
        }
        for cell in touched[i].iter_mut().skip(c) {
            *cell = true;
        }
    }

    let mut d = Diagram::new();
    for row in 1..=n {
        for col in 1..=n {
            if touched[row][col] {
                continue;
            }
            let left_of_origin = w.apply(row) > col;
            let below_origin = ((row + 1)..=n).any(|r| w.apply(r) == col);
            if left_of_origin && below_origin {
                d.insert(Cell::new(row, col));
            }
        }
    }
    d
}

/// Row bubble counts of `d`.
pub fn row_counts(d: &Diagram) -> LehmerCode {
    d.row_counts()
}

/// The permutation whose Rothe diagram is `d`, if one exists.
///
/// Candidate `w` is read from the row dots of `d`; it is returned only when
/// its Rothe diagram reproduces `d` exactly.
pub fn recover_permutation(d: &Diagram) -> Option<Permutation> {
    let w = row_dots(d).ok()?.permutation();
    (rothe_diagram(&w) == *d).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::rothe_152869347 as sample;

    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn sample_diagram() {
        let p = w("152869347");
        assert_eq!(rothe_diagram(&p), sample());
        assert_eq!(rothe_via_death_rays(&p), sample());
        assert!(sample().has(4, 3));
    }

    #[test]
    fn small_diagrams() {
        assert!(rothe_diagram(&Permutation::identity()).is_empty());
        assert!(rothe_via_death_rays(&Permutation::identity()).is_empty());
        assert_eq!(
            rothe_diagram(&w("231")),
            Diagram::from_pairs([(1, 1), (2, 1)])
        );
        assert_eq!(
            rothe_via_death_rays(&w("21")),
            Diagram::from_pairs([(1, 1)])
        );
    }

    #[test]
    fn row_counts_examples() {
        assert_eq!(row_counts(&sample()).counts(), &[0, 3, 0, 4, 2, 3]);
        assert!(row_counts(&Diagram::new()).is_empty());
        assert_eq!(
            row_counts(&Diagram::from_pairs([(1, 1), (2, 1)])).counts(),
            &[1, 1]
        );
    }

    #[test]
    fn recover_examples() {
        assert_eq!(recover_permutation(&sample()), Some(w("152869347")));
        assert_eq!(
            recover_permutation(&Diagram::from_pairs([(1, 2), (2, 1)])),
            None
        );
        assert_eq!(
            recover_permutation(&Diagram::new()),
            Some(Permutation::identity())
        );
    }

    #[test]
    fn json_is_sorted_and_strict() {
        let d = Diagram::from_pairs([(2, 1), (1, 2)]);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"cells":[[1,2],[2,1]]}"#
        );
        assert!(serde_json::from_str::<Diagram>(r#"{"cells":[[1,1],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<Diagram>(r#"{"cells":[[0,1]]}"#).is_err());
        let back: Diagram = serde_json::from_str(r#"{"cells":[[2,1],[1,2]]}"#).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn row_and_column_access() {
        let d = sample();
        assert_eq!(d.row(4).collect::<Vec<_>>(), vec![3, 4, 6, 7]);
        assert_eq!(d.column(3).collect::<Vec<_>>(), vec![2, 4, 5, 6]);
        assert_eq!(d.row(3).count(), 0);
        assert_eq!(d.max_coord(), 7);
    }
}
