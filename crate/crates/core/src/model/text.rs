use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::{symbols_from_str, symbols_to_string, Alphabet, Symbol};
use crate::error::{MawError, Result};

/// A symbol sequence checked against an alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Text {
    data: Vec<Symbol>,
}

impl Text {
    pub fn new(data: impl Into<Vec<Symbol>>, alphabet: &Alphabet) -> Result<Self> {
        let data = data.into();
        alphabet.validate(&data)?;
        Ok(Self { data })
    }

    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        Self::new(symbols_from_str(s)?, alphabet)
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.data
    }

    pub fn window(&self, start: usize, len: usize) -> Result<Window<'_>> {
        Window::new(&self.data, start, len)
    }

    /// All windows of length `d`, left to right.
    pub fn windows(&self, d: usize) -> impl Iterator<Item = Window<'_>> + '_ {
        let count = if d == 0 || d > self.data.len() { 0 } else { self.data.len() - d + 1 };
        (0..count).map(move |start| Window { text: &self.data, start, len: d })
    }
}

impl Deref for Text {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.data
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.data))
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({:?})", self.to_string())
    }
}

/// The half-open range `[start, start + len)` of a text.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Window<'a> {
    text: &'a [Symbol],
    start: usize,
    len: usize,
}

impl<'a> Window<'a> {
    pub fn new(text: &'a [Symbol], start: usize, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(MawError::InvalidParameter("window length must be at least 1".into()));
        }
        if start + len > text.len() {
            return Err(MawError::InvalidParameter(format!(
                "window [{start}, {}) exceeds text length {}",
                start + len,
                text.len()
            )));
        }
        Ok(Self { text, start, len })
    }

    /// The whole of `text` as one window.
    pub fn whole(text: &'a [Symbol]) -> Result<Self> {
        Self::new(text, 0, text.len())
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn content(&self) -> &'a [Symbol] {
        &self.text[self.start..self.start + self.len]
    }

    /// Symbol right after the window, if any.
    pub fn next_symbol(&self) -> Option<Symbol> {
        self.text.get(self.end()).copied()
    }

    /// Symbol right before the window, if any.
    pub fn prev_symbol(&self) -> Option<Symbol> {
        self.start.checked_sub(1).map(|i| self.text[i])
    }

    pub fn span(&self) -> WindowSpan {
        WindowSpan { start: self.start, len: self.len, content: symbols_to_string(self.content()) }
    }
}

impl fmt::Debug for Window<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Window[{}..{})={:?}", self.start, self.end(), symbols_to_string(self.content()))
    }
}

/// Owned description of a window, as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpan {
    pub start: usize,
    pub len: usize,
    pub content: String,
}
