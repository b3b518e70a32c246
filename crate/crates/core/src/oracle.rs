//! Exhaustive verification at small sizes.
//!
//! Enumerations are deterministic and can be cut into index ranges, so a run
//! can be split across threads and merged back into the same report.

use std::collections::BTreeMap;
use std::ops::Range;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{recover_permutation, rothe_diagram, rothe_via_death_rays, Cell, Diagram};
use crate::permutation::{LehmerCode, Permutation};
use crate::reconstruct::{build_from_row_counts, build_stepout_avoiding, FreeColumns, Placement};
use crate::rules::{
    check_empty_cell_gap, check_vertical_popping, classify, column_dots, is_rothe, row_dots,
    Conditions, RuleError,
};

/// Largest `n` accepted by [`enumerate_permutations`].
pub const MAX_PERMUTATION_N: usize = 9;
/// Largest `rows * cols` accepted by [`enumerate_grid_diagrams`].
pub const MAX_GRID_CELLS: usize = 25;
/// Counterexamples kept per report; the total is always recorded.
pub const COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("permutation size {n} outside 1..={max}", max = MAX_PERMUTATION_N)]
    PermutationBound { n: usize },
    #[error("grid {rows}x{cols} outside bounds (each side ≥ 1, at most {max} cells)", max = MAX_GRID_CELLS)]
    GridBound { rows: usize, cols: usize },
    #[error(transparent)]
    Rule(#[from] RuleError),
}

fn check_permutation_bound(n: usize) -> Result<(), OracleError> {
    if (1..=MAX_PERMUTATION_N).contains(&n) {
        Ok(())
    } else {
        Err(OracleError::PermutationBound { n })
    }
}

fn check_grid_bound(rows: usize, cols: usize) -> Result<(), OracleError> {
    if rows >= 1 && cols >= 1 && rows * cols <= MAX_GRID_CELLS {
        Ok(())
    } else {
        Err(OracleError::GridBound { rows, cols })
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Permutations of `{1..n}` in lexicographic order, canonicalized.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Vec<usize>,
    remaining: u64,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = Permutation::from_word(self.current.clone()).expect("valid word");
        if self.remaining > 0 {
            next_lexicographic(&mut self.current);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Permutations {}

fn next_lexicographic(word: &mut [usize]) -> bool {
    let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
        return false;
    };
    let j = (i..word.len())
        .rev()
        .find(|&j| word[j] > word[i - 1])
        .unwrap();
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// The `rank`-th permutation of `{1..n}` in lexicographic order, as a full
/// word. The factorial digits of `rank` are its Lehmer code.
fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut unused: Vec<usize> = (1..=n).collect();
    let mut word = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let digit = (rank / f) as usize;
        rank %= f;
        word.push(unused.remove(digit));
    }
    word
}

/// All `n!` permutations of `{1..n}`, lexicographic, first the identity.
pub fn enumerate_permutations(n: usize) -> Result<Permutations, OracleError> {
    check_permutation_bound(n)?;
    Ok(permutation_range(n, 0..factorial(n)))
}

/// Permutations with lexicographic ranks in `ranks` (clamped to `n!`).
pub fn permutation_range(n: usize, ranks: Range<u64>) -> Permutations {
    let end = ranks.end.min(factorial(n));
    let start = ranks.start.min(end);
    Permutations {
        current: unrank(n, start.min(factorial(n) - 1)),
        remaining: end - start,
    }
}

/// All subsets of a `rows × cols` grid.
#[derive(Debug, Clone)]
pub struct GridDiagrams {
    cols: usize,
    masks: Range<u64>,
}

impl Iterator for GridDiagrams {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        let mask = self.masks.next()?;
        Some(grid_diagram(mask, self.cols))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.masks.size_hint()
    }
}

impl ExactSizeIterator for GridDiagrams {}

/// Bit `k` of `mask` is the cell `(k / cols + 1, k % cols + 1)`.
pub fn grid_diagram(mask: u64, cols: usize) -> Diagram {
    (0..64)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| Cell::new(k / cols + 1, k % cols + 1))
        .collect()
}

/// All `2^(rows·cols)` diagrams inside the grid, ordered by bitmask.
pub fn enumerate_grid_diagrams(rows: usize, cols: usize) -> Result<GridDiagrams, OracleError> {
    check_grid_bound(rows, cols)?;
    Ok(grid_range(cols, 0..1u64 << (rows * cols)))
}

/// Grid diagrams whose bitmasks lie in `masks`.
pub fn grid_range(cols: usize, masks: Range<u64>) -> GridDiagrams {
    GridDiagrams { cols, masks }
}

/// Splits `0..total` into `parts` contiguous ranges.
pub fn split_range(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    let chunk = total.div_ceil(parts).max(1);
    (0..parts)
        .map(|p| (p * chunk).min(total)..((p + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// A diagram on which the five characterizations disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub diagram: Diagram,
    pub verdicts: Conditions,
}

/// Outcome of classifying every diagram in a grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub rows: usize,
    pub cols: usize,
    pub diagrams: u64,
    /// Diagrams selected by each condition, keyed by [`Conditions::NAMES`].
    pub counts: BTreeMap<String, u64>,
    pub counterexample_total: u64,
    /// The smallest counterexamples by diagram order, at most
    /// [`COUNTEREXAMPLE_CAP`].
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl EquivalenceReport {
    fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            diagrams: 0,
            counts: Conditions::NAMES
                .iter()
                .map(|n| (n.to_string(), 0))
                .collect(),
            counterexample_total: 0,
            counterexamples: Vec::new(),
            elapsed_ms: 0,
        }
    }

    /// No diagram separates the characterizations.
    pub fn agrees(&self) -> bool {
        self.counterexample_total == 0
    }

    /// Combines two partial reports over disjoint diagram ranges.
    pub fn merge(mut self, other: EquivalenceReport) -> Self {
        self.diagrams += other.diagrams;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.counterexample_total += other.counterexample_total;
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples
            .sort_by(|a, b| a.diagram.cmp(&b.diagram));
        self.counterexamples.truncate(COUNTEREXAMPLE_CAP);
        self.elapsed_ms = self.elapsed_ms.max(other.elapsed_ms);
        self
    }

    fn record(&mut self, d: &Diagram, c: Conditions) {
        self.diagrams += 1;
        for (name, v) in Conditions::NAMES.iter().zip(c.as_array()) {
            if v {
                *self.counts.get_mut(*name).unwrap() += 1;
            }
        }
        if !c.agree() {
            self.counterexample_total += 1;
            self.counterexamples.push(Counterexample {
                diagram: d.clone(),
                verdicts: c,
            });
            self.counterexamples
                .sort_by(|a, b| a.diagram.cmp(&b.diagram));
            self.counterexamples.truncate(COUNTEREXAMPLE_CAP);
        }
    }
}

fn equivalence_range(
    rows: usize,
    cols: usize,
    masks: Range<u64>,
) -> Result<EquivalenceReport, OracleError> {
    let mut report = EquivalenceReport::empty(rows, cols);
    for d in grid_range(cols, masks) {
        report.record(&d, classify(&d)?.conditions());
    }
    Ok(report)
}

/// Classifies every diagram in the grid under the four characterizations and
/// the direct Rothe check.
pub fn verify_equivalence(rows: usize, cols: usize) -> Result<EquivalenceReport, OracleError> {
    verify_equivalence_parallel(rows, cols, 1)
}

/// [`verify_equivalence`] with the grid split across `jobs` threads.
pub fn verify_equivalence_parallel(
    rows: usize,
    cols: usize,
    jobs: usize,
) -> Result<EquivalenceReport, OracleError> {
    check_grid_bound(rows, cols)?;
    let start = Instant::now();
    let total = 1u64 << (rows * cols);
    let ranges = split_range(total, jobs);
    let parts: Vec<Result<EquivalenceReport, OracleError>> = if ranges.len() <= 1 {
        ranges
            .into_iter()
            .map(|r| equivalence_range(rows, cols, r))
            .collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| s.spawn(move || equivalence_range(rows, cols, r)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let mut report = EquivalenceReport::empty(rows, cols);
    for part in parts {
        report = report.merge(part?);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Outcome of the Lehmer round trips over `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub n: usize,
    pub total: u64,
    pub passed: u64,
    pub failures: Vec<Permutation>,
    pub elapsed_ms: u64,
}

impl BijectionReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// For every `w` in `S_n`: `w` survives the Lehmer round trip, and building
/// from its row counts reproduces its Rothe diagram.
pub fn verify_lehmer_bijection(n: usize) -> Result<BijectionReport, OracleError> {
    let start = Instant::now();
    let mut report = BijectionReport {
        n,
        total: 0,
        passed: 0,
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    for w in enumerate_permutations(n)? {
        report.total += 1;
        let code = w.lehmer_code();
        let ok = Permutation::from_lehmer(&code) == w
            && build_from_row_counts(&code) == rothe_diagram(&w);
        if ok {
            report.passed += 1;
        } else if report.failures.len() < COUNTEREXAMPLE_CAP {
            report.failures.push(w);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Outcome of the builder comparison over small codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub max_entry: usize,
    pub max_len: usize,
    pub total: u64,
    pub passed: u64,
    pub failures: Vec<LehmerCode>,
}

impl CodeReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Every code with entries `≤ max_entry` and length `≤ max_len`.
pub fn enumerate_codes(max_entry: usize, max_len: usize) -> impl Iterator<Item = LehmerCode> {
    let base = max_entry as u64 + 1;
    let total = base.pow(max_len as u32);
    (0..total).map(move |mut k| {
        let mut counts = Vec::with_capacity(max_len);
        for _ in 0..max_len {
            counts.push((k % base) as usize);
            k /= base;
        }
        LehmerCode::new(counts)
    })
}

/// For every small code: the code round-trips through its permutation, and
/// the greedy builder, the step-out builder, and the Rothe diagram of the
/// decoded permutation all coincide.
pub fn verify_code_builders(max_entry: usize, max_len: usize) -> CodeReport {
    let mut report = CodeReport {
        max_entry,
        max_len,
        total: 0,
        passed: 0,
        failures: Vec::new(),
    };
    for code in enumerate_codes(max_entry, max_len) {
        report.total += 1;
        let w = Permutation::from_lehmer(&code);
        let greedy = build_from_row_counts(&code);
        let ok = w.lehmer_code() == code
            && build_stepout_avoiding(&code).as_ref() == Ok(&greedy)
            && rothe_diagram(&w) == greedy;
        if ok {
            report.passed += 1;
        } else if report.failures.len() < COUNTEREXAMPLE_CAP {
            report.failures.push(code);
        }
    }
    report
}

/// A Rothe diagram that failed one of the necessary properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFailure {
    pub permutation: Permutation,
    pub check: String,
}

/// Outcome of checking every `D(w)`, `w` in `S_n`, against each property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub n: usize,
    pub total: u64,
    pub passed: u64,
    pub failures_by_check: BTreeMap<String, u64>,
    pub failures: Vec<PropertyFailure>,
    pub elapsed_ms: u64,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Names of the per-permutation checks in [`verify_rothe_properties`].
pub const PROPERTY_CHECKS: [&str; 8] = [
    "death_rays",
    "row_counts",
    "box",
    "row_dots",
    "column_dots",
    "rules",
    "agreement",
    "recover",
];

fn property_failures(w: &Permutation) -> Result<Vec<&'static str>, OracleError> {
    let d = rothe_diagram(w);
    let n = w.len();
    let mut failed = Vec::new();
    if rothe_via_death_rays(w) != d {
        failed.push("death_rays");
    }
    if d.row_counts() != w.lehmer_code() {
        failed.push("row_counts");
    }
    if d.cells().any(|c| c.row >= n.max(1) || c.col >= n.max(1)) {
        failed.push("box");
    }
    let diagonal_tail = |dots: &crate::rules::DotSet| {
        dots.dots()
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Cell::new(i + 1, w.apply(i + 1)))
    };
    if !diagonal_tail(&row_dots(&d)?) {
        failed.push("row_dots");
    }
    if !diagonal_tail(&column_dots(&d)?) {
        failed.push("column_dots");
    }
    let c = classify(&d)?;
    if !c.all_hold() {
        failed.push("rules");
    }
    if !c.conditions().agree() {
        failed.push("agreement");
    }
    if recover_permutation(&d).as_ref() != Some(w) {
        failed.push("recover");
    }
    Ok(failed)
}

/// For every `w` in `S_n`, checks that `D(w)` matches the death-ray
/// construction and the Lehmer code, fits the `(n-1)×(n-1)` box, has row and
/// column dots at `(i, w_i)`, passes every rule, and recovers `w`.
pub fn verify_rothe_properties(n: usize) -> Result<PropertyReport, OracleError> {
    let start = Instant::now();
    let mut report = PropertyReport {
        n,
        total: 0,
        passed: 0,
        failures_by_check: PROPERTY_CHECKS.iter().map(|c| (c.to_string(), 0)).collect(),
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    for w in enumerate_permutations(n)? {
        report.total += 1;
        let failed = property_failures(&w)?;
        if failed.is_empty() {
            report.passed += 1;
        }
        for check in failed {
            *report.failures_by_check.get_mut(check).unwrap() += 1;
            if report.failures.len() < COUNTEREXAMPLE_CAP {
                report.failures.push(PropertyFailure {
                    permutation: w.clone(),
                    check: check.to_string(),
                });
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// All diagrams inside `rows × cols` with the given row counts that satisfy
/// vertical popping and the empty cell gap rule.
///
/// Rows are chosen bottom to top. Both rules only look downward, so a prefix
/// that already violates one cannot be completed; such prefixes are pruned.
pub fn popping_gap_solutions(
    code: &LehmerCode,
    rows: usize,
    cols: usize,
) -> Result<Vec<Diagram>, OracleError> {
    let mut out = Vec::new();
    if code.len() > rows || code.counts().iter().any(|&a| a > cols) {
        return Ok(out);
    }
    search_rows(code, cols, 1, Diagram::new(), &mut out)?;
    Ok(out)
}

fn search_rows(
    code: &LehmerCode,
    cols: usize,
    row: usize,
    partial: Diagram,
    out: &mut Vec<Diagram>,
) -> Result<(), OracleError> {
    if row > code.len() {
        out.push(partial);
        return Ok(());
    }
    for subset in combinations(cols, code.get(row)) {
        let mut next = partial.clone();
        for col in subset {
            next.insert(Cell::new(row, col));
        }
        if check_vertical_popping(&next)?.holds && check_empty_cell_gap(&next).holds {
            search_rows(code, cols, row + 1, next, out)?;
        }
    }
    Ok(())
}

/// All `k`-subsets of `{1..n}`, increasing, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Every placement of `c` with positions in `1..=max_col` whose diagram is a
/// Rothe diagram.
pub fn rothe_placements(c: &FreeColumns, max_col: usize) -> Vec<Placement> {
    combinations(max_col, c.len())
        .into_iter()
        .map(|p| Placement::new(p).expect("combinations increase"))
        .filter(|p| is_rothe(&c.place(p)))
        .collect()
}

/// A column bound containing every Rothe placement of `c`.
///
/// A bubble `(i, w_j)` of a Rothe diagram has label
/// `i + #(bubbles left of it) = w_j + #(bubbles below it)`, so
/// `w_j ≤ max_row + bubble_count - 1`.
pub fn placement_search_bound(c: &FreeColumns) -> usize {
    c.max_row() + c.bubble_count()
}
