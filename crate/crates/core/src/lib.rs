//! Rothe diagrams of permutations and the local rules that recognize them.
//!
//! A permutation `w` has diagram `D(w) = {(i, w_j) : i < j, w_i > w_j}`.
//! [`rules`] decides whether an arbitrary finite set of cells is such a
//! diagram, [`reconstruct`] builds diagrams back from row counts or from
//! unplaced columns, and [`oracle`] checks everything exhaustively at small
//! sizes.

pub mod diagram;
pub mod oracle;
pub mod permutation;
pub mod reconstruct;
pub mod rules;
pub mod samples;

pub use diagram::{
    recover_permutation, rothe_diagram, rothe_via_death_rays, row_counts, Cell, Diagram,
    DiagramError,
};
pub use permutation::{
    lehmer_code, parse_permutation, permutation_from_lehmer, LehmerCode, ParseError, Permutation,
};
pub use reconstruct::{
    build_from_row_counts, build_stepout_avoiding, check_free_numbering, find_free_step_outs,
    free_column_starts, place_free_columns, FreeColumns, Placement, ReconstructError,
};
pub use rules::{
    check_rothe, check_rule, classify, is_rothe, Classification, Conditions, Rule, RuleError,
    RuleReport, Witness,
};
