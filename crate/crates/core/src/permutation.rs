//! Permutations of the positive integers with finitely many unfixed points,
//! and the Lehmer code bijection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced when parsing or validating a permutation.
///
/// Positions are 1-based token indices into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty token at position {position}")]
    EmptyToken { position: usize },
    #[error("non-numeric token {token:?} at position {position}")]
    NonNumeric { position: usize, token: String },
    #[error("duplicate value {value} at position {position}")]
    Duplicate { position: usize, value: usize },
    #[error("value {value} at position {position} is out of range 1..={n}")]
    OutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },
}

/// A permutation in one-line notation, extended by the identity beyond the
/// stored word.
///
/// The word is kept canonical: it is empty for the identity, otherwise its
/// last entry is an unfixed point.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermutationRepr", into = "PermutationRepr")]
pub struct Permutation {
    word: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    word: Vec<usize>,
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = ParseError;

    fn try_from(repr: PermutationRepr) -> Result<Self, Self::Error> {
        Permutation::from_word(repr.word)
    }
}

impl From<Permutation> for PermutationRepr {
    fn from(w: Permutation) -> Self {
        PermutationRepr { word: w.word }
    }
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Validates that `word` is a bijection on `{1..n}` and truncates the
    /// trailing fixed points.
    pub fn from_word(word: Vec<usize>) -> Result<Self, ParseError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (idx, &value) in word.iter().enumerate() {
            let position = idx + 1;
            if value == 0 || value > n {
                return Err(ParseError::OutOfRange { position, value, n });
            }
            if seen[value] {
                return Err(ParseError::Duplicate { position, value });
            }
            seen[value] = true;
        }
        let mut word = word;
        while word.last().is_some_and(|&v| v == word.len()) {
            word.pop();
        }
        Ok(Self { word })
    }

    /// The canonical one-line word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Length of the canonical word (position of the last unfixed point).
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w_i` for a 1-based position `i`, following the identity tail.
    pub fn apply(&self, i: usize) -> usize {
        assert!(i >= 1, "positions are 1-based");
        self.word.get(i - 1).copied().unwrap_or(i)
    }

    /// Inverse permutation: `inverse().apply(w_i) == i`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { word: inv }
    }

    /// Index pairs `(i, j)` with `i < j` and `w_i > w_j`.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.word.len();
        (1..=n).flat_map(move |i| {
            ((i + 1)..=n).filter_map(move |j| (self.apply(i) > self.apply(j)).then_some((i, j)))
        })
    }

    /// Number of inversions starting at each index.
    pub fn lehmer_code(&self) -> LehmerCode {
        let counts = self
            .word
            .iter()
            .enumerate()
            .map(|(i, &wi)| self.word[i + 1..].iter().filter(|&&wj| wj < wi).count())
            .collect();
        LehmerCode::new(counts)
    }

    /// The unique permutation whose Lehmer code is `code`.
    ///
    /// Each entry picks the `(a_i + 1)`-th smallest value not yet used from a
    /// ground set of size `len + max + 1`, which is large enough for any code.
    pub fn from_lehmer(code: &LehmerCode) -> Self {
        let counts = code.counts();
        let max = counts.iter().copied().max().unwrap_or(0);
        let ground = counts.len() + max + 1;
        let mut unused: Vec<usize> = (1..=ground).collect();
        let mut word = Vec::with_capacity(ground);
        for &a in counts {
            word.push(unused.remove(a));
        }
        word.extend(unused);
        Self::from_word(word).expect("lehmer construction yields a bijection")
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

/// Splits on commas and whitespace; an empty field between commas is an
/// error.
fn tokenize(text: &str) -> Result<Vec<&str>, ParseError> {
    let mut tokens: Vec<&str> = Vec::new();
    if text.contains(',') {
        for field in text.split(',') {
            let field = field.trim();
            if field.is_empty() {
                return Err(ParseError::EmptyToken {
                    position: tokens.len() + 1,
                });
            }
            tokens.extend(field.split_whitespace());
        }
    } else {
        tokens.extend(text.split_whitespace());
    }
    Ok(tokens)
}

/// Parses one-line notation.
///
/// Values are separated by whitespace and/or commas. A single token of two or
/// more digits with no separators is read as a compact word, one value per
/// digit, so `"152869347"` parses as nine values. Empty input is the identity.
pub fn parse_permutation(text: &str) -> Result<Permutation, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Permutation::identity());
    }

    let tokens = tokenize(text)?;

    let compact =
        tokens.len() == 1 && tokens[0].len() > 1 && tokens[0].bytes().all(|b| b.is_ascii_digit());
    let values: Vec<usize> = if compact {
        tokens[0].bytes().map(|b| usize::from(b - b'0')).collect()
    } else {
        tokens
            .iter()
            .enumerate()
            .map(|(idx, tok)| {
                tok.parse::<usize>().map_err(|_| ParseError::NonNumeric {
                    position: idx + 1,
                    token: (*tok).to_string(),
                })
            })
            .collect::<Result<_, _>>()?
    };

    // Report duplicates before range problems so "2 2 1" names the repeat.
    let mut seen = std::collections::HashSet::new();
    for (idx, &value) in values.iter().enumerate() {
        if !seen.insert(value) {
            return Err(ParseError::Duplicate {
                position: idx + 1,
                value,
            });
        }
    }
    Permutation::from_word(values)
}

impl fmt::Display for Permutation {
    /// Compact digits when every value is a single digit, otherwise
    /// space-separated. The identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let compact = self.word.iter().all(|&v| v <= 9);
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 && !compact {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Finite sequence of nonnegative integers `(a_1, a_2, ...)`, kept with
/// trailing zeros trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "LehmerRepr", into = "LehmerRepr")]
pub struct LehmerCode {
    counts: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct LehmerRepr {
    counts: Vec<usize>,
}

impl From<LehmerRepr> for LehmerCode {
    fn from(repr: LehmerRepr) -> Self {
        LehmerCode::new(repr.counts)
    }
}

impl From<LehmerCode> for LehmerRepr {
    fn from(code: LehmerCode) -> Self {
        LehmerRepr {
            counts: code.counts,
        }
    }
}

impl LehmerCode {
    pub fn new(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `a_i` for 1-based `i`; zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.counts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Total number of inversions.
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl From<Vec<usize>> for LehmerCode {
    fn from(counts: Vec<usize>) -> Self {
        LehmerCode::new(counts)
    }
}

impl FromStr for LehmerCode {
    type Err = ParseError;

    /// Comma- or whitespace-separated nonnegative integers; empty input is the
    /// empty code.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(LehmerCode::default());
        }
        let mut counts = Vec::new();
        for (idx, tok) in tokenize(s)?.into_iter().enumerate() {
            counts.push(tok.parse::<usize>().map_err(|_| ParseError::NonNumeric {
                position: idx + 1,
                token: tok.to_string(),
            })?);
        }
        Ok(LehmerCode::new(counts))
    }
}

impl fmt::Display for LehmerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Lehmer code of `w`.
pub fn lehmer_code(w: &Permutation) -> LehmerCode {
    w.lehmer_code()
}

/// Inverse of [`lehmer_code`].
pub fn permutation_from_lehmer(code: &LehmerCode) -> Permutation {
    Permutation::from_lehmer(code)
}
