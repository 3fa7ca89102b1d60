//! Symbols, alphabets, texts, windows and words.
//!
//! Positions are 0-based and ranges half-open throughout: the window written
//! `T[i..i+d-1]` in 1-based closed notation is `Window { start: i - 1, len: d }`.

mod alphabet;
mod stats;
mod text;
mod word;

pub use alphabet::Alphabet;
pub use stats::{window_stats, WindowStats};
pub use text::{Text, Window, WindowSpan};
pub use word::Word;

use crate::error::{MawError, Result};

/// A symbol is a byte code. It displays as the character with the same code
/// point, so every symbol sequence maps losslessly to and from a `String`.
pub type Symbol = u8;

pub fn symbols_from_str(s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .enumerate()
        .map(|(position, c)| {
            u8::try_from(u32::from(c)).map_err(|_| {
                MawError::InvalidParameter(format!(
                    "character {c:?} at position {position} is outside the single-byte range"
                ))
            })
        })
        .collect()
}

pub fn symbols_to_string(symbols: &[Symbol]) -> String {
    symbols.iter().map(|&s| char::from(s)).collect()
}

/// Number of distinct symbols in `s`.
pub fn distinct_count(s: &[Symbol]) -> usize {
    let mut seen = [false; 256];
    s.iter().filter(|&&c| !std::mem::replace(&mut seen[usize::from(c)], true)).count()
}

/// Whether the non-empty `pattern` occurs contiguously in `s`.
///
/// Plain quadratic scan. Callers handle the empty pattern themselves.
pub fn occurs(pattern: &[Symbol], s: &[Symbol]) -> bool {
    debug_assert!(!pattern.is_empty());
    pattern.len() <= s.len() && s.windows(pattern.len()).any(|w| w == pattern)
}

/// Substring test that treats the empty pattern as occurring everywhere.
pub(crate) fn occurs_or_empty(pattern: &[Symbol], s: &[Symbol]) -> bool {
    pattern.is_empty() || occurs(pattern, s)
}

/// Start of the leftmost occurrence of `pattern` in `s`.
pub(crate) fn find(pattern: &[Symbol], s: &[Symbol]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    if pattern.len() > s.len() {
        return None;
    }
    s.windows(pattern.len()).position(|w| w == pattern)
}

/// Serde adapter writing a symbol as a one-character string.
pub mod symbol_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Symbol;

    pub fn serialize<S: Serializer>(symbol: &Symbol, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_char(char::from(*symbol))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Symbol, D::Error> {
        let c = char::deserialize(deserializer)?;
        u8::try_from(u32::from(c)).map_err(|_| serde::de::Error::custom("symbol outside the single-byte range"))
    }
}

pub(crate) fn reversed(s: &[Symbol]) -> Vec<Symbol> {
    s.iter().rev().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Character-by-character containment written without `windows`.
    fn containment(pattern: &[Symbol], s: &[Symbol]) -> bool {
        (0..s.len()).any(|start| {
            start + pattern.len() <= s.len()
                && (0..pattern.len()).all(|k| s[start + k] == pattern[k])
        })
    }

    #[test]
    fn occurs_examples() {
        assert!(occurs(b"ab", b"abaab"));
        assert!(!occurs(b"bb", b"abaab"));
        assert!(!occurs(b"aaba", b"abaab"));
        assert!(!occurs(b"abaabx", b"abaab"));
        assert!(occurs_or_empty(b"", b""));
    }

    fn all_strings(sigma: u8, max_len: usize) -> Vec<Vec<Symbol>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<Symbol>| {
                    (0..sigma).map(move |c| {
                        let mut v = w.clone();
                        v.push(b'0' + c);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn occurs_matches_naive_containment_exhaustively() {
        let subjects = all_strings(3, 7);
        let patterns = all_strings(3, 3);
        for s in subjects.iter().filter(|s| s.len() >= 5) {
            for p in patterns.iter().filter(|p| !p.is_empty()) {
                assert_eq!(occurs(p, s), containment(p, s));
                assert_eq!(find(p, s).is_some(), containment(p, s));
            }
        }
        // long subjects against long patterns, binary
        for s in all_strings(2, 12).iter().filter(|s| s.len() == 12) {
            for p in [&b"0110"[..], b"111111", b"010101010101", b"0000000000001"] {
                assert_eq!(occurs(p, s), containment(p, s));
            }
        }
    }

    #[test]
    fn distinct_counts() {
        assert_eq!(distinct_count(b""), 0);
        assert_eq!(distinct_count(b"abcddd"), 4);
    }

    #[test]
    fn strings_round_trip() {
        let all: Vec<Symbol> = (0..=255).collect();
        assert_eq!(symbols_from_str(&symbols_to_string(&all)).unwrap(), all);
        assert!(symbols_from_str("λ").is_err());
    }
}
