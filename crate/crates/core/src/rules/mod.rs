//! Characterization rules for arbitrary diagrams.
//!
//! Each checker returns a [`RuleReport`] whose witnesses explain every
//! violation. [`classify`] runs all of them and groups the verdicts into the
//! four rule combinations that each single out exactly the Rothe diagrams.

pub mod dots;
pub mod gap;
pub mod numbering;
pub mod southwest;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{recover_permutation, rothe_diagram, Cell, Diagram};

pub use dots::{
    check_dot_rule, check_horizontal_popping, check_vertical_popping, column_dots, row_dots, DotSet,
};
pub use gap::{check_empty_cell_gap, final_bubbles, GapBox};
pub use numbering::{
    check_numbering, find_step_outs, horizontal_numbering, vertical_numbering, Labeling,
};
pub use southwest::check_southwest;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    /// Dots failed to settle onto the diagonal by the horizon. This points at
    /// a bound bug, not at bad input.
    #[error("dots not stabilized at row {row} (horizon {horizon})")]
    Unstabilized { horizon: usize, row: usize },
    /// Step-outs are only defined once the numbering condition holds.
    #[error("step-outs are undefined: the diagram does not satisfy the numbering condition")]
    NotEnumerated,
    #[error("{0} applies to free columns, not to diagrams")]
    NotADiagramRule(Rule),
}

/// Identifier of a rule; serialized in snake case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Southwest,
    Dot,
    VerticalPopping,
    HorizontalPopping,
    Numbering,
    StepOut,
    EmptyCellGap,
    Rothe,
    FreeNumbering,
    FreeStepOut,
}

impl Rule {
    /// Rules reported by [`classify`], in report order.
    pub const DIAGRAM_RULES: [Rule; 8] = [
        Rule::Southwest,
        Rule::Dot,
        Rule::VerticalPopping,
        Rule::HorizontalPopping,
        Rule::Numbering,
        Rule::StepOut,
        Rule::EmptyCellGap,
        Rule::Rothe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Southwest => "southwest",
            Rule::Dot => "dot",
            Rule::VerticalPopping => "vertical_popping",
            Rule::HorizontalPopping => "horizontal_popping",
            Rule::Numbering => "numbering",
            Rule::StepOut => "step_out",
            Rule::EmptyCellGap => "empty_cell_gap",
            Rule::Rothe => "rothe",
            Rule::FreeNumbering => "free_numbering",
            Rule::FreeStepOut => "free_step_out",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule {0:?}")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        [
            Rule::Southwest,
            Rule::Dot,
            Rule::VerticalPopping,
            Rule::HorizontalPopping,
            Rule::Numbering,
            Rule::StepOut,
            Rule::EmptyCellGap,
            Rule::Rothe,
            Rule::FreeNumbering,
            Rule::FreeStepOut,
        ]
        .into_iter()
        .find(|r| r.name() == key)
        .or(match key.as_str() {
            "ecg" | "gap" => Some(Rule::EmptyCellGap),
            "step_outs" | "stepout" => Some(Rule::StepOut),
            "is_rothe" => Some(Rule::Rothe),
            _ => None,
        })
        .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// Evidence for one violation.
///
/// JSON: a cell is `[row, col]`, a pair is `[[row, col], [row, col]]`, and a
/// gap box is an object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Cell(Cell),
    Pair(Cell, Cell),
    Gap(GapBox),
}

/// Verdict of one rule on one diagram. `holds` is true exactly when there
/// are no witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ReportRepr")]
pub struct RuleReport {
    pub rule: Rule,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Deserialize)]
struct ReportRepr {
    rule: Rule,
    holds: bool,
    witnesses: Vec<Witness>,
}

#[derive(Debug, Error)]
#[error("report for {0} has holds inconsistent with its witnesses")]
pub struct InconsistentReport(Rule);

impl TryFrom<ReportRepr> for RuleReport {
    type Error = InconsistentReport;

    fn try_from(r: ReportRepr) -> Result<Self, Self::Error> {
        if r.holds != r.witnesses.is_empty() {
            return Err(InconsistentReport(r.rule));
        }
        Ok(RuleReport {
            rule: r.rule,
            holds: r.holds,
            witnesses: r.witnesses,
        })
    }
}

impl RuleReport {
    pub fn new(rule: Rule, witnesses: Vec<Witness>) -> Self {
        Self {
            rule,
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Is-Rothe check as a report. Witnesses are the cells where `d` differs
/// from the Rothe diagram of the permutation read off its row dots.
pub fn check_rothe(d: &Diagram) -> Result<RuleReport, RuleError> {
    let w = row_dots(d)?.permutation();
    let expected = rothe_diagram(&w);
    let witnesses = d
        .symmetric_difference(&expected)
        .map(Witness::Cell)
        .collect();
    Ok(RuleReport::new(Rule::Rothe, witnesses))
}

/// `d` is the Rothe diagram of some permutation.
pub fn is_rothe(d: &Diagram) -> bool {
    recover_permutation(d).is_some()
}

/// Runs a single diagram rule.
///
/// [`Rule::StepOut`] fails with [`RuleError::NotEnumerated`] when the
/// numbering condition does not hold. Free-column rules are rejected.
pub fn check_rule(rule: Rule, d: &Diagram) -> Result<RuleReport, RuleError> {
    match rule {
        Rule::Southwest => Ok(check_southwest(d)),
        Rule::Dot => check_dot_rule(d),
        Rule::VerticalPopping => check_vertical_popping(d),
        Rule::HorizontalPopping => check_horizontal_popping(d),
        Rule::Numbering => Ok(check_numbering(d)),
        Rule::StepOut => find_step_outs(d),
        Rule::EmptyCellGap => Ok(check_empty_cell_gap(d)),
        Rule::Rothe => check_rothe(d),
        Rule::FreeNumbering | Rule::FreeStepOut => Err(RuleError::NotADiagramRule(rule)),
    }
}

/// Every rule's verdict on one diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Reports in [`Rule::DIAGRAM_RULES`] order. The step-out report is
    /// absent when the diagram is not enumerated.
    pub reports: Vec<RuleReport>,
}

/// The four rule combinations that characterize Rothe diagrams, plus the
/// direct check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub rothe: bool,
    pub vertical_popping_and_gap: bool,
    pub numbering_and_dot: bool,
    pub dot_and_southwest: bool,
    pub numbering_and_step_out: bool,
}

impl Conditions {
    pub const NAMES: [&'static str; 5] = [
        "rothe",
        "vertical_popping_and_gap",
        "numbering_and_dot",
        "dot_and_southwest",
        "numbering_and_step_out",
    ];

    pub fn as_array(&self) -> [bool; 5] {
        [
            self.rothe,
            self.vertical_popping_and_gap,
            self.numbering_and_dot,
            self.dot_and_southwest,
            self.numbering_and_step_out,
        ]
    }

    pub fn agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&v| v == a[0])
    }
}

impl Classification {
    pub fn report(&self, rule: Rule) -> Option<&RuleReport> {
        self.reports.iter().find(|r| r.rule == rule)
    }

    /// Verdict of `rule`; `None` for a step-out check on a non-enumerated
    /// diagram.
    pub fn holds(&self, rule: Rule) -> Option<bool> {
        self.report(rule).map(|r| r.holds)
    }

    fn verdict(&self, rule: Rule) -> bool {
        self.holds(rule).unwrap_or(false)
    }

    pub fn conditions(&self) -> Conditions {
        Conditions {
            rothe: self.verdict(Rule::Rothe),
            vertical_popping_and_gap: self.verdict(Rule::VerticalPopping)
                && self.verdict(Rule::EmptyCellGap),
            numbering_and_dot: self.verdict(Rule::Numbering) && self.verdict(Rule::Dot),
            dot_and_southwest: self.verdict(Rule::Dot) && self.verdict(Rule::Southwest),
            numbering_and_step_out: self.verdict(Rule::Numbering) && self.verdict(Rule::StepOut),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(|r| r.holds) && self.report(Rule::StepOut).is_some()
    }
}

/// Runs every diagram rule on `d`.
pub fn classify(d: &Diagram) -> Result<Classification, RuleError> {
    let mut reports = Vec::with_capacity(Rule::DIAGRAM_RULES.len());
    for rule in Rule::DIAGRAM_RULES {
        match check_rule(rule, d) {
            Ok(report) => reports.push(report),
            Err(RuleError::NotEnumerated) if rule == Rule::StepOut => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Classification { reports })
}
