//! Small diagrams that separate the characterization rules from each other.

use crate::diagram::Diagram;
use crate::reconstruct::FreeColumns;

/// Rothe diagram of `152869347`: twelve bubbles, six rows.
pub fn rothe_152869347() -> Diagram {
    Diagram::from_pairs([
        (2, 2),
        (2, 3),
        (2, 4),
        (4, 3),
        (4, 4),
        (4, 6),
        (4, 7),
        (5, 3),
        (5, 4),
        (6, 3),
        (6, 4),
        (6, 7),
    ])
}

/// `{(1,1), (2,2)}`: enumerated and gap-consistent, but neither dotted nor
/// step-out avoiding.
pub fn numbered_not_dotted() -> Diagram {
    Diagram::from_pairs([(1, 1), (2, 2)])
}

/// `{(1,2), (2,1)}`: dotted, but not enumerated and not southwest.
pub fn dotted_not_numbered() -> Diagram {
    Diagram::from_pairs([(1, 2), (2, 1)])
}

/// Four free columns `{1,2}, {2,4,5}, {2}, {5}` that place into a Rothe
/// diagram at positions `1, 3, 4, 6`.
pub fn placeable_columns() -> FreeColumns {
    FreeColumns::new(vec![vec![1, 2], vec![2, 4, 5], vec![2], vec![5]]).unwrap()
}

/// The single column `{1,3}`, which fits nowhere.
pub fn unplaceable_column() -> FreeColumns {
    FreeColumns::new(vec![vec![1, 3]]).unwrap()
}
