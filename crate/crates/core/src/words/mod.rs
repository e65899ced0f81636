//! Finite words over small alphabets, morphisms of free monoids, and the
//! statistics of right-infinite words we need (factors, recurrence,
//! complexity, cube-freeness).
//!
//! Letters are stored as `u8` indices into an [`Alphabet`]; the alphabet
//! order fixes the coordinates of Parikh vectors and incidence matrices.

mod factor;
mod matrix;
mod morphism;
mod stream;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use factor::{factors, subword_complexity, FactorSet, SuffixAutomaton};
pub use matrix::IntMatrix;
pub use morphism::{
    analyze_morphism, fixed_point_prefix, incidence_matrix, Morphism, MorphismReport,
};
pub use stream::{PrefixStream, StreamSource};

/// Index of a letter in its alphabet.
pub type Letter = u8;

/// A finite word, possibly empty.
pub type Word = Vec<Letter>;

/// Largest supported alphabet.
pub const MAX_LETTERS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    EmptyAlphabet,
    TooManyLetters(usize),
    DuplicateSymbol(String),
    UnknownSymbol(String),
    LetterOutOfRange {
        letter: Letter,
        size: usize,
    },
    ImageCount {
        expected: usize,
        found: usize,
    },
    NotProlongable {
        letter: String,
    },
    NotRecurrentInHorizon {
        occurrences: usize,
        horizon: usize,
    },
    /// The fixed point stopped growing; only possible for a malformed source.
    FiniteWord {
        length: usize,
    },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyAlphabet => write!(f, "alphabet is empty"),
            WordError::TooManyLetters(n) => {
                write!(f, "alphabet has {n} letters, at most {MAX_LETTERS} are supported")
            }
            WordError::DuplicateSymbol(s) => write!(f, "duplicate letter `{s}`"),
            WordError::UnknownSymbol(s) => write!(f, "`{s}` is not a letter of the alphabet"),
            WordError::LetterOutOfRange { letter, size } => {
                write!(f, "letter index {letter} outside alphabet of size {size}")
            }
            WordError::ImageCount { expected, found } => {
                write!(f, "expected {expected} letter images, found {found}")
            }
            WordError::NotProlongable { letter } => {
                write!(f, "morphism is not prolongable on `{letter}`")
            }
            WordError::NotRecurrentInHorizon { occurrences, horizon } => write!(
                f,
                "word occurs {occurrences} time(s) in the first {horizon} letters, need at least two"
            ),
            WordError::FiniteWord { length } => {
                write!(f, "generated word stopped growing at length {length}")
            }
        }
    }
}

/// Ordered list of distinct letter symbols.
///
/// Symbols are strings so that derived alphabets (primed copies) can use
/// multi-character names like `x'`. Words are parsed by greedy
/// longest-symbol matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if symbols.len() > MAX_LETTERS {
            return Err(WordError::TooManyLetters(symbols.len()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(WordError::UnknownSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(WordError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// One letter per character of `letters`, e.g. `Alphabet::from_chars("xy")`.
    pub fn from_chars(letters: &str) -> Result<Self, WordError> {
        Self::new(letters.chars().map(|c| c.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len() as Letter
    }

    /// Parses a word, ignoring whitespace. `_` and the empty string denote ε.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "_" {
            return Ok(Word::new());
        }
        let mut rest = compact.as_str();
        let mut word = Word::new();
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    word.push(i as Letter);
                    rest = &rest[s.len()..];
                }
                None => {
                    let bad = rest
                        .chars()
                        .next()
                        .map(|c| c.to_string())
                        .unwrap_or_default();
                    return Err(WordError::UnknownSymbol(bad));
                }
            }
        }
        Ok(word)
    }

    pub fn render(&self, word: &[Letter]) -> String {
        word.iter().map(|&l| self.symbol(l)).collect()
    }

    pub fn check(&self, word: &[Letter]) -> Result<(), WordError> {
        match word.iter().find(|&&l| l as usize >= self.len()) {
            Some(&letter) => Err(WordError::LetterOutOfRange {
                letter,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }
}

/// Letter-occurrence counts, indexed by alphabet order.
pub fn parikh(word: &[Letter], alphabet_size: usize) -> Vec<u64> {
    let mut counts = alloc::vec![0u64; alphabet_size];
    for &l in word {
        counts[l as usize] += 1;
    }
    counts
}

/// Sum of letter weights; `weights[i]` is the degree of letter `i`.
pub fn weight(word: &[Letter], weights: &[u64]) -> u64 {
    word.iter().map(|&l| weights[l as usize]).sum()
}

/// A factor `uuu` with `|u| = period` starting at `position` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cube {
    pub position: usize,
    pub period: usize,
}

/// Finds the cube with the smallest start position (ties: smallest period).
///
/// For each period `p`, a cube starts at `i` iff `w[j] == w[j + p]` for all
/// `j` in `i..i + 2p`, so one pass of match-run lengths per period suffices.
pub fn find_cube(word: &[Letter]) -> Option<Cube> {
    let n = word.len();
    let mut best: Option<Cube> = None;
    for period in 1..=n / 3 {
        let need = 2 * period;
        let mut run = 0usize;
        // Run of matches ending at j; a run of length `need` ending at j
        // means a cube starting at j + 1 - need.
        for j in 0..n - period {
            if let Some(b) = best {
                if j + 1 >= need && j + 1 - need > b.position {
                    break;
                }
            }
            if word[j] == word[j + period] {
                run += 1;
                if run >= need {
                    let position = j + 1 - need;
                    if best.is_none_or(|b| position < b.position) {
                        best = Some(Cube { position, period });
                    }
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    best
}

pub fn is_cube_free(word: &[Letter]) -> bool {
    find_cube(word).is_none()
}

/// Start positions (0-based) of every occurrence of `pattern` in `text`.
pub fn occurrences(text: &[Letter], pattern: &[Letter]) -> Vec<usize> {
    if pattern.is_empty() {
        return (0..=text.len()).collect();
    }
    if pattern.len() > text.len() {
        return Vec::new();
    }
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

/// Largest distance between consecutive occurrences of `u` in the first
/// `horizon` letters of the stream.
pub fn recurrence_gap(
    stream: &mut PrefixStream,
    u: &[Letter],
    horizon: usize,
) -> Result<usize, WordError> {
    let prefix = stream.prefix(horizon)?;
    let occ = occurrences(prefix, u);
    if occ.len() < 2 {
        return Err(WordError::NotRecurrentInHorizon {
            occurrences: occ.len(),
            horizon,
        });
    }
    Ok(occ.windows(2).map(|p| p[1] - p[0]).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute_cube(w: &[Letter]) -> Option<Cube> {
        for i in 0..w.len() {
            for p in 1..=(w.len() - i) / 3 {
                let a = &w[i..i + p];
                if a == &w[i + p..i + 2 * p] && a == &w[i + 2 * p..i + 3 * p] {
                    return Some(Cube {
                        position: i,
                        period: p,
                    });
                }
            }
        }
        None
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(
            Alphabet::new(["x", "x"]),
            Err(WordError::DuplicateSymbol("x".into()))
        );
        assert_eq!(
            Alphabet::new(Vec::<String>::new()),
            Err(WordError::EmptyAlphabet)
        );
    }

    #[test]
    fn parse_prefers_longest_symbol() {
        let a = Alphabet::new(["x", "y", "x'", "y'"]).unwrap();
        assert_eq!(a.parse_word("x y'y' y").unwrap(), vec![0, 3, 3, 1]);
        assert_eq!(a.render(&[0, 3, 3, 1]), "xy'y'y");
        assert_eq!(a.parse_word("_").unwrap(), vec![]);
        assert!(a.parse_word("xz").is_err());
    }

    #[test]
    fn parikh_examples() {
        let xy = Alphabet::from_chars("xy").unwrap();
        assert_eq!(parikh(&xy.parse_word("xyy").unwrap(), 2), vec![1, 2]);
        assert_eq!(parikh(&[], 2), vec![0, 0]);
        let xyz = Alphabet::from_chars("xyz").unwrap();
        assert_eq!(parikh(&xyz.parse_word("xz").unwrap(), 3), vec![1, 0, 1]);
    }

    #[test]
    fn weight_examples() {
        let xy = Alphabet::from_chars("xy").unwrap();
        assert_eq!(weight(&xy.parse_word("xyy").unwrap(), &[1, 2]), 5);
        assert_eq!(weight(&[], &[3, 4]), 0);
        let xyz = Alphabet::from_chars("xyz").unwrap();
        assert_eq!(weight(&xyz.parse_word("xz").unwrap(), &[1, 2, 3]), 4);
    }

    #[test]
    fn cube_examples() {
        let xy = Alphabet::from_chars("xy").unwrap();
        let w = xy.parse_word("xyyyx").unwrap();
        assert_eq!(
            find_cube(&w),
            Some(Cube {
                position: 1,
                period: 1
            })
        );
        assert!(is_cube_free(&[]));
        assert!(is_cube_free(&xy.parse_word("xyxyyxyx").unwrap()));
    }

    #[test]
    fn cube_search_matches_brute_force_exhaustively() {
        // every binary word up to length 14
        for n in 0..=14usize {
            for bits in 0u32..(1 << n) {
                let w: Vec<Letter> = (0..n).map(|i| ((bits >> i) & 1) as Letter).collect();
                assert_eq!(find_cube(&w), brute_cube(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn periodic_recurrence_gap() {
        let xy = Alphabet::from_chars("xy").unwrap();
        let mut s = PrefixStream::periodic(xy, vec![0, 1]).unwrap();
        assert_eq!(recurrence_gap(&mut s, &[0], 100).unwrap(), 2);
        assert_eq!(
            recurrence_gap(&mut s, &[0, 0], 100),
            Err(WordError::NotRecurrentInHorizon {
                occurrences: 0,
                horizon: 100
            })
        );
    }
}
