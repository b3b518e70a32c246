//! Row dots and column dots, and the rules built on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Rule, RuleError, RuleReport, Witness};
use crate::diagram::{Cell, Diagram};
use crate::permutation::Permutation;

/// A dot placement on rows `1..=horizon`, one dot per row.
///
/// Dots are defined on the infinite grid. Past the largest coordinate of the
/// diagram each new dot takes the smallest free column, and once the dots of
/// rows `1..=horizon` occupy exactly the columns `1..=horizon` every later dot
/// sits on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotSet {
    dots: Vec<Cell>,
    horizon: usize,
}

impl DotSet {
    /// Dots sorted by row; `dots()[i - 1]` is the dot in row `i`.
    pub fn dots(&self) -> &[Cell] {
        &self.dots
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// The dot in `row`, following the diagonal past the horizon.
    pub fn in_row(&self, row: usize) -> Cell {
        self.dots
            .get(row.wrapping_sub(1))
            .copied()
            .unwrap_or(Cell::new(row, row))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && self.in_row(cell.row) == cell
    }

    /// The permutation sending `i` to the column of the row-`i` dot.
    pub fn permutation(&self) -> Permutation {
        Permutation::from_word(self.dots.iter().map(|c| c.col).collect())
            .expect("stabilized dots form a bijection")
    }

    /// Dots up to the last one off the diagonal.
    pub fn essential(&self) -> &[Cell] {
        let n = self.permutation().len();
        &self.dots[..n]
    }
}

/// Horizon used for dots of `d`: `2 * max_coord + 2`.
pub fn dot_horizon(d: &Diagram) -> usize {
    2 * d.max_coord() + 2
}

/// Row dots: in each row, the first column strictly right of every bubble in
/// that row that no lower row's dot already uses.
pub fn row_dots(d: &Diagram) -> Result<DotSet, RuleError> {
    let horizon = dot_horizon(d);
    let max = d.max_coord();
    let mut used = vec![false; horizon + max + 2];
    let mut dots = Vec::with_capacity(horizon);
    for row in 1..=horizon {
        let mut col = d.row(row).next_back().map_or(1, |c| c + 1);
        while used[col] {
            col += 1;
        }
        used[col] = true;
        dots.push(Cell::new(row, col));
    }
    let set = DotSet { dots, horizon };
    check_stabilized(&set, max)?;
    Ok(set)
}

/// Column dots: in each column, the first row strictly above every bubble in
/// that column that no earlier column's dot already uses. Returned sorted by
/// row.
pub fn column_dots(d: &Diagram) -> Result<DotSet, RuleError> {
    let transposed = row_dots(&d.transpose())?;
    let mut dots: Vec<Cell> = transposed.dots.iter().map(|c| c.transpose()).collect();
    dots.sort_unstable();
    let set = DotSet {
        dots,
        horizon: transposed.horizon,
    };
    check_stabilized(&set, d.max_coord())?;
    Ok(set)
}

fn check_stabilized(set: &DotSet, max_coord: usize) -> Result<(), RuleError> {
    let horizon = set.horizon;
    let unstabilized = |row| RuleError::Unstabilized { horizon, row };

    let mut used = BTreeSet::new();
    for (idx, dot) in set.dots.iter().enumerate() {
        let row = idx + 1;
        if dot.row != row {
            return Err(unstabilized(row));
        }
        if row > max_coord {
            let smallest_free = (1..).find(|c| !used.contains(c)).unwrap();
            if dot.col != smallest_free {
                return Err(unstabilized(row));
            }
        }
        if !used.insert(dot.col) {
            return Err(unstabilized(row));
        }
    }
    // Columns 1..=horizon all taken means every later dot is diagonal.
    if used.len() != horizon || used.last().copied() != Some(horizon) {
        return Err(unstabilized(horizon));
    }
    Ok(())
}

/// Dot rule: row dots and column dots coincide. Witnesses pair the row dot
/// and the column dot of each row where they differ.
pub fn check_dot_rule(d: &Diagram) -> Result<RuleReport, RuleError> {
    let rows = row_dots(d)?;
    let cols = column_dots(d)?;
    let horizon = rows.horizon().max(cols.horizon());
    let witnesses = (1..=horizon)
        .filter_map(|r| {
            let (a, b) = (rows.in_row(r), cols.in_row(r));
            (a != b).then_some(Witness::Pair(a, b))
        })
        .collect();
    Ok(RuleReport::new(Rule::Dot, witnesses))
}

/// Vertical popping: no bubble strictly above a row dot in its column.
/// Witnesses are `(bubble, dot)` pairs.
pub fn check_vertical_popping(d: &Diagram) -> Result<RuleReport, RuleError> {
    let rows = row_dots(d)?;
    let mut witnesses = Vec::new();
    for dot in rows.dots() {
        for row in d.column(dot.col).filter(|&r| r > dot.row) {
            witnesses.push(Witness::Pair(Cell::new(row, dot.col), *dot));
        }
    }
    witnesses.sort();
    Ok(RuleReport::new(Rule::VerticalPopping, witnesses))
}

/// Horizontal popping: no bubble strictly right of a column dot in its row.
/// Witnesses are `(bubble, dot)` pairs.
pub fn check_horizontal_popping(d: &Diagram) -> Result<RuleReport, RuleError> {
    let cols = column_dots(d)?;
    let mut witnesses = Vec::new();
    for dot in cols.dots() {
        for col in d.row(dot.row).filter(|&c| c > dot.col) {
            witnesses.push(Witness::Pair(Cell::new(dot.row, col), *dot));
        }
    }
    witnesses.sort();
    Ok(RuleReport::new(Rule::HorizontalPopping, witnesses))
}
