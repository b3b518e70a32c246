//! ASCII rendering, row 1 at the bottom unless flipped.

use rothe::rules::{horizontal_numbering, row_dots};
use rothe::{Cell, Diagram, RuleError};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Charset {
    pub bubble: char,
    pub empty: char,
    pub dot: char,
    pub basement: char,
}

impl Default for Charset {
    fn default() -> Self {
        Self {
            bubble: 'o',
            empty: '.',
            dot: '*',
            basement: '#',
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub show_dots: bool,
    pub show_basement: bool,
    pub show_labels: bool,
    /// Row 1 on top instead of at the bottom.
    pub flip: bool,
    pub charset: Charset,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("glyph {0:?} is not a printable character")]
    Unprintable(char),
    #[error("glyph {0:?} is used twice")]
    DuplicateGlyph(char),
    #[error(transparent)]
    Dots(#[from] RuleError),
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), RenderError> {
        let c = self.charset;
        let glyphs = [c.bubble, c.empty, c.dot, c.basement];
        for (i, &g) in glyphs.iter().enumerate() {
            if g.is_control() || g.is_whitespace() {
                return Err(RenderError::Unprintable(g));
            }
            if glyphs[..i].contains(&g) {
                return Err(RenderError::DuplicateGlyph(g));
            }
        }
        Ok(())
    }
}

/// Labels are drawn only when every one is a single digit.
pub fn labels_fit(d: &Diagram) -> bool {
    horizontal_numbering(d).max_label().map_or(true, |m| m <= 9)
}

/// Renders `d`, one glyph per cell, each row ending in a newline.
///
/// The viewport is the bounding box of the bubbles and any shown dots, at
/// least 1×1. A bubble is never hidden by a dot.
pub fn render(d: &Diagram, opts: &RenderOptions) -> Result<String, RenderError> {
    opts.validate()?;
    let dots: Vec<Cell> = if opts.show_dots {
        row_dots(d)?.essential().to_vec()
    } else {
        Vec::new()
    };
    let labels = (opts.show_labels && labels_fit(d)).then(|| horizontal_numbering(d));
    let rows = dots
        .iter()
        .map(|c| c.row)
        .fold(d.max_row(), usize::max)
        .max(1);
    let cols = dots
        .iter()
        .map(|c| c.col)
        .fold(d.max_col(), usize::max)
        .max(1);

    let glyph = |cell: Cell| {
        if d.contains(cell) {
            match labels.as_ref().and_then(|l| l.get(cell)) {
                Some(n) => char::from_digit(n as u32, 10).unwrap(),
                None => opts.charset.bubble,
            }
        } else if dots.contains(&cell) {
            opts.charset.dot
        } else {
            opts.charset.empty
        }
    };

    let order: Vec<usize> = if opts.flip {
        (1..=rows).collect()
    } else {
        (1..=rows).rev().collect()
    };
    let mut out = String::with_capacity(rows * (cols + 2));
    for row in order {
        if opts.show_basement {
            out.push(opts.charset.basement);
        }
        out.extend((1..=cols).map(|col| glyph(Cell::new(row, col))));
        out.push('\n');
    }
    Ok(out)
}
