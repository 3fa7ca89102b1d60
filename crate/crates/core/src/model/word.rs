use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{symbols_from_str, symbols_to_string, Symbol};
use crate::error::{MawError, Result};

/// A non-empty symbol sequence.
///
/// Words order canonically: shorter first, then lexicographically by symbol
/// code. Every word list produced by this crate is in that order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(data: impl Into<Vec<Symbol>>) -> Result<Self> {
        let data = data.into();
        if data.is_empty() {
            return Err(MawError::InvalidParameter("words are non-empty".into()));
        }
        Ok(Self(data))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(symbols_from_str(s)?)
    }

    pub(crate) fn from_vec_unchecked(data: Vec<Symbol>) -> Self {
        debug_assert!(!data.is_empty());
        Self(data)
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w[2..]` in 1-based notation: everything but the first symbol.
    pub fn tail(&self) -> &[Symbol] {
        &self.0[1..]
    }

    /// `w[..|w|-1]`: everything but the last symbol.
    pub fn head(&self) -> &[Symbol] {
        &self.0[..self.0.len() - 1]
    }

    pub fn first(&self) -> Symbol {
        self.0[0]
    }

    pub fn last(&self) -> Symbol {
        self.0[self.0.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AsRef<[Symbol]> for Word {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_length_then_code() {
        let mut words: Vec<Word> = ["ba", "c", "aaa", "ab", "b"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        words.sort();
        let shown: Vec<String> = words.iter().map(Word::to_string).collect();
        assert_eq!(shown, ["b", "c", "ab", "ba", "aaa"]);
    }

    #[test]
    fn head_and_tail() {
        let w = Word::parse("abc").unwrap();
        assert_eq!(w.head(), b"ab");
        assert_eq!(w.tail(), b"bc");
        let single = Word::parse("a").unwrap();
        assert!(single.head().is_empty() && single.tail().is_empty());
    }

    #[test]
    fn empty_word_is_rejected() {
        assert!(Word::new(Vec::new()).is_err());
    }
}
