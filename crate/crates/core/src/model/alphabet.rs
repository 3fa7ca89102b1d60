use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{symbols_from_str, symbols_to_string, Symbol};
use crate::error::{MawError, Result};

/// Printable symbols handed out by [`Alphabet::letters`], in order.
const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// An ordered set of distinct symbols.
///
/// Length-1 minimal absent words are exactly the members that do not occur in
/// the subject, so every computation takes the alphabet explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    member: [u64; 4],
}

impl Alphabet {
    pub fn new(symbols: impl Into<Vec<Symbol>>) -> Result<Self> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(MawError::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let mut member = [0u64; 4];
        for &s in &symbols {
            let (word, bit) = (usize::from(s) / 64, s % 64);
            if member[word] >> bit & 1 == 1 {
                return Err(MawError::InvalidAlphabet(format!(
                    "symbol {:?} listed twice",
                    char::from(s)
                )));
            }
            member[word] |= 1 << bit;
        }
        Ok(Self { symbols, member })
    }

    /// Parses an alphabet written as a string of symbols, e.g. `"abcd"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(symbols_from_str(s)?)
    }

    /// Distinct symbols of `data` in first-occurrence order.
    pub fn infer(data: &[Symbol]) -> Result<Self> {
        let mut seen = [false; 256];
        let mut symbols = Vec::new();
        for &s in data {
            if !seen[usize::from(s)] {
                seen[usize::from(s)] = true;
                symbols.push(s);
            }
        }
        Self::new(symbols)
    }

    /// The first `size` symbols of `a..z A..Z 0..9`.
    pub fn letters(size: usize) -> Result<Self> {
        if size == 0 || size > LETTERS.len() {
            return Err(MawError::InvalidParameter(format!(
                "letter alphabets have between 1 and {} symbols, got {size}",
                LETTERS.len()
            )));
        }
        Self::new(&LETTERS[..size])
    }

    /// Digits `0..` for up to ten symbols, letters beyond that.
    pub fn standard(size: usize) -> Result<Self> {
        if (1..=10).contains(&size) {
            Self::new((0..size as u8).map(|i| b'0' + i).collect::<Vec<_>>())
        } else {
            Self::letters(size)
        }
    }

    pub fn binary() -> Self {
        Self::new(b"01".to_vec()).expect("two distinct symbols")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.member[usize::from(s) / 64] >> (s % 64) & 1 == 1
    }

    /// Checks that every symbol of `data` belongs to the alphabet.
    pub fn validate(&self, data: &[Symbol]) -> Result<()> {
        match data.iter().position(|&s| !self.contains(s)) {
            None => Ok(()),
            Some(position) => Err(MawError::SymbolNotInAlphabet {
                symbol: data[position],
                position,
            }),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.symbols))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.to_string())
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Alphabet::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(Alphabet::parse("aba"), Err(MawError::InvalidAlphabet(_))));
        assert!(matches!(Alphabet::parse(""), Err(MawError::InvalidAlphabet(_))));
    }

    #[test]
    fn infer_keeps_first_occurrence_order() {
        let a = Alphabet::infer(b"cbaaac").unwrap();
        assert_eq!(a.symbols(), b"cba");
        assert_eq!(a.size(), 3);
    }

    #[test]
    fn membership_and_validation() {
        let a = Alphabet::parse("abc").unwrap();
        assert!(a.contains(b'b'));
        assert!(!a.contains(b'd'));
        assert_eq!(
            a.validate(b"abda"),
            Err(MawError::SymbolNotInAlphabet { symbol: b'd', position: 2 })
        );
    }

    #[test]
    fn standard_alphabets() {
        assert_eq!(Alphabet::standard(2).unwrap().symbols(), b"01");
        assert_eq!(Alphabet::standard(26).unwrap().to_string(), "abcdefghijklmnopqrstuvwxyz");
        assert!(Alphabet::letters(63).is_err());
    }

    #[test]
    fn high_bytes_round_trip_through_display() {
        let a = Alphabet::new(vec![0xff, 0x80, b'a']).unwrap();
        assert_eq!(Alphabet::parse(&a.to_string()).unwrap(), a);
    }
}
