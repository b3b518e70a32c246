//! Command-line front end for the `rothe` library.
//!
//! [`run`] does all the work and returns what to print and the exit code, so
//! the binary is a thin wrapper.

pub mod render;

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use rothe::oracle::{
    verify_equivalence_parallel, verify_lehmer_bijection, verify_rothe_properties, BijectionReport,
    EquivalenceReport, PropertyReport,
};
use rothe::{
    build_from_row_counts, build_stepout_avoiding, check_free_numbering, check_rule,
    find_free_step_outs, parse_permutation, place_free_columns, recover_permutation, rothe_diagram,
    Diagram, FreeColumns, LehmerCode, Permutation, Placement, Rule, RuleError, RuleReport,
};

use render::{labels_fit, render, Charset, RenderOptions};

/// Largest `--n` without `--extended`.
pub const DEFAULT_MAX_N: usize = 6;
/// Largest grid cell count without `--extended`.
pub const DEFAULT_MAX_GRID_CELLS: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "rothe",
    version,
    about = "Build, check, place and draw Rothe diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the diagram of a permutation.
    Diagram {
        /// One-line notation, e.g. `231` or `2 3 1`; `-` reads stdin.
        #[arg(required = true, allow_hyphen_values = true)]
        permutation: Vec<String>,
        /// Print the ASCII drawing instead of JSON.
        #[arg(long)]
        ascii: bool,
    },
    /// Print the Lehmer code of a permutation.
    Lehmer {
        #[arg(required = true, allow_hyphen_values = true)]
        permutation: Vec<String>,
    },
    /// Print the permutation with a given Lehmer code.
    Unlehmer {
        /// Comma or space separated counts; `-` reads stdin.
        #[arg(required = true, allow_hyphen_values = true)]
        code: Vec<String>,
    },
    /// Run the rules on a diagram file.
    Check {
        /// Diagram JSON (`{"cells": [[row, col], ...]}`); `-` reads stdin.
        input: String,
        /// Only these rules, comma separated.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<Rule>,
    },
    /// Build the diagram with given row counts.
    Build {
        /// Bubbles per row, bottom row first.
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        #[arg(long, value_enum, default_value_t = Method::Greedy)]
        method: Method,
    },
    /// Place free columns.
    Place {
        /// Columns JSON (`{"columns": [[row, ...], ...]}`); `-` reads stdin.
        input: String,
    },
    /// Exhaustive checks at small sizes.
    Verify {
        /// Check every permutation of this size.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        n: usize,
        /// Check every subset of this grid, as ROWSxCOLS.
        #[arg(long, default_value = "3x3")]
        grid: Grid,
        #[arg(long, env = "ROTHE_JOBS", default_value_t = 1,
              value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Allow n above 6 and grids above 9 cells.
        #[arg(long)]
        extended: bool,
    },
    /// Draw a diagram file as text.
    Render {
        input: String,
        #[command(flatten)]
        style: Style,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Leftmost free columns, bottom row first.
    Greedy,
    /// Columns that avoid step-outs.
    Stepout,
}

#[derive(Debug, Args)]
pub struct Style {
    /// Overlay row dots.
    #[arg(long)]
    pub dots: bool,
    /// Draw the basement column.
    #[arg(long)]
    pub basement: bool,
    /// Put horizontal labels inside bubbles (when all are single digits).
    #[arg(long)]
    pub labels: bool,
    /// Row 1 on top.
    #[arg(long)]
    pub flip: bool,
    #[arg(long, default_value_t = 'o')]
    pub bubble_glyph: char,
    #[arg(long, default_value_t = '.')]
    pub empty_glyph: char,
    #[arg(long, default_value_t = '*')]
    pub dot_glyph: char,
    #[arg(long, default_value_t = '#')]
    pub basement_glyph: char,
}

impl Style {
    pub fn options(&self) -> RenderOptions {
        RenderOptions {
            show_dots: self.dots,
            show_basement: self.basement,
            show_labels: self.labels,
            flip: self.flip,
            charset: Charset {
                bubble: self.bubble_glyph,
                empty: self.empty_glyph,
                dot: self.dot_glyph,
                basement: self.basement_glyph,
            },
        }
    }
}

/// Grid size `ROWSxCOLS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (r, c) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected ROWSxCOLS, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Grid {
            rows: parse(r)?,
            cols: parse(c)?,
        })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Bad input; exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Bound(String),
}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// What a command wants printed, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn json(value: &impl Serialize, ok: bool) -> Self {
        let mut stdout = serde_json::to_string(value).expect("serializable");
        stdout.push('\n');
        Self {
            stdout,
            stderr: String::new(),
            code: if ok { 0 } else { 1 },
        }
    }

    fn with_note(mut self, note: impl fmt::Display) -> Self {
        self.stderr.push_str(&format!("{note}\n"));
        self
    }

    pub fn from_error(e: &CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        }
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(text)
}

fn joined_args(args: &[String], stdin: &mut dyn Read) -> Result<String, CliError> {
    if args.len() == 1 && args[0] == "-" {
        read_source("-", stdin)
    } else {
        Ok(args.join(" "))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(
    path: &str,
    stdin: &mut dyn Read,
) -> Result<T, CliError> {
    let text = read_source(path, stdin)?;
    serde_json::from_str(&text).map_err(input_err)
}

#[derive(Serialize)]
struct Built {
    diagram: Diagram,
    permutation: Permutation,
    one_line: String,
}

#[derive(Serialize)]
struct CheckOutput {
    holds: bool,
    reports: Vec<RuleReport>,
    /// Rules with no verdict, such as step-outs on a non-enumerated diagram.
    undefined: Vec<Rule>,
}

#[derive(Serialize)]
struct Placed {
    placement: Placement,
    diagram: Diagram,
    permutation: Option<Permutation>,
}

#[derive(Serialize)]
struct PlaceFailure {
    free_numbering: RuleReport,
    free_step_out: Option<RuleReport>,
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    lehmer: BijectionReport,
    properties: PropertyReport,
    equivalence: EquivalenceReport,
}

/// Runs one command. Errors are input errors (exit 2); rule failures are
/// successful runs with exit code 1.
pub fn execute(command: &Command, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    match command {
        Command::Diagram { permutation, ascii } => {
            let w = parse_permutation(&joined_args(permutation, stdin)?).map_err(input_err)?;
            let d = rothe_diagram(&w);
            if *ascii {
                let text = render(&d, &RenderOptions::default()).map_err(input_err)?;
                return Ok(Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                });
            }
            Ok(Outcome::json(&d, true))
        }
        Command::Lehmer { permutation } => {
            let w = parse_permutation(&joined_args(permutation, stdin)?).map_err(input_err)?;
            Ok(Outcome::json(&w.lehmer_code(), true))
        }
        Command::Unlehmer { code } => {
            let code: LehmerCode = joined_args(code, stdin)?.parse().map_err(input_err)?;
            Ok(Outcome::json(&Permutation::from_lehmer(&code), true))
        }
        Command::Check { input, rules } => {
            let d: Diagram = read_json(input, stdin)?;
            let selected = if rules.is_empty() {
                Rule::DIAGRAM_RULES.to_vec()
            } else {
                rules.clone()
            };
            let mut reports = Vec::new();
            let mut undefined = Vec::new();
            for &rule in &selected {
                match check_rule(rule, &d) {
                    Ok(r) => reports.push(r),
                    Err(RuleError::NotEnumerated) => undefined.push(rule),
                    Err(e) => return Err(input_err(e)),
                }
            }
            let holds = undefined.is_empty() && reports.iter().all(|r| r.holds);
            let mut out = Outcome::json(
                &CheckOutput {
                    holds,
                    reports,
                    undefined: undefined.clone(),
                },
                holds,
            );
            if !undefined.is_empty() {
                out = out.with_note(RuleError::NotEnumerated);
            }
            Ok(out)
        }
        Command::Build { rows, method } => {
            let code: LehmerCode = rows.parse().map_err(input_err)?;
            let diagram = match method {
                Method::Greedy => build_from_row_counts(&code),
                Method::Stepout => build_stepout_avoiding(&code).map_err(input_err)?,
            };
            let permutation = Permutation::from_lehmer(&code);
            let one_line = permutation.to_string();
            Ok(Outcome::json(
                &Built {
                    diagram,
                    permutation,
                    one_line,
                },
                true,
            ))
        }
        Command::Place { input } => {
            let columns: FreeColumns = read_json(input, stdin)?;
            if let Some((placement, diagram)) = place_free_columns(&columns) {
                let permutation = recover_permutation(&diagram);
                return Ok(Outcome::json(
                    &Placed {
                        placement,
                        diagram,
                        permutation,
                    },
                    true,
                ));
            }
            let free_numbering = check_free_numbering(&columns);
            let free_step_out = find_free_step_outs(&columns).ok();
            let failed = if !free_numbering.holds {
                "free numbering condition fails"
            } else {
                "free step-outs present"
            };
            Ok(Outcome::json(
                &PlaceFailure {
                    free_numbering,
                    free_step_out,
                },
                false,
            )
            .with_note(format!("no placement: {failed}")))
        }
        Command::Verify {
            n,
            grid,
            jobs,
            extended,
        } => {
            if !extended && (*n > DEFAULT_MAX_N || grid.rows * grid.cols > DEFAULT_MAX_GRID_CELLS) {
                return Err(CliError::Bound(format!(
                    "n = {n} and grid {grid} exceed the default bounds (n ≤ {DEFAULT_MAX_N}, \
                     {DEFAULT_MAX_GRID_CELLS} cells); pass --extended"
                )));
            }
            let bound = |e: rothe::oracle::OracleError| CliError::Bound(e.to_string());
            let lehmer = verify_lehmer_bijection(*n).map_err(bound)?;
            let properties = verify_rothe_properties(*n).map_err(bound)?;
            let equivalence =
                verify_equivalence_parallel(grid.rows, grid.cols, *jobs as usize).map_err(bound)?;
            let passed = lehmer.all_passed() && properties.all_passed() && equivalence.agrees();
            Ok(Outcome::json(
                &VerifyOutput {
                    passed,
                    lehmer,
                    properties,
                    equivalence,
                },
                passed,
            ))
        }
        Command::Render { input, style } => {
            let d: Diagram = read_json(input, stdin)?;
            let opts = style.options();
            let text = render(&d, &opts).map_err(input_err)?;
            let mut out = Outcome {
                stdout: text,
                stderr: String::new(),
                code: 0,
            };
            if opts.show_labels && !labels_fit(&d) {
                out = out.with_note("labels above 9; drawing plain bubbles");
            }
            Ok(out)
        }
    }
}

/// [`execute`] with input errors folded into exit code 2.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    execute(&cli.command, stdin).unwrap_or_else(|e| Outcome::from_error(&e))
}
