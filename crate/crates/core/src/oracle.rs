//! Reference MAW predicate and enumerator.
//!
//! A word `w` is a minimal absent word of `S` iff
//! (A) `w` does not occur in `S`, (B) `w[1..]` occurs and (C) `w[..|w|-1]`
//! occurs, with the empty word occurring everywhere. Everything here applies
//! those three conditions literally; it is the ground truth the automaton
//! engine and every slide analysis are checked against.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{MawError, Result};
use crate::model::{occurs_or_empty, Alphabet, Symbol, Word};

/// The MAWs of one subject, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MawSet {
    pub subject_length: usize,
    pub alphabet: Alphabet,
    words: Vec<Word>,
}

impl MawSet {
    /// Sorts and deduplicates `words`.
    pub fn from_words(subject_length: usize, alphabet: Alphabet, mut words: Vec<Word>) -> Self {
        words.sort_unstable();
        words.dedup();
        Self { subject_length, alphabet, words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    /// Words of `self` missing from `other`, canonical order.
    pub fn difference(&self, other: &MawSet) -> Vec<Word> {
        let mut out = Vec::new();
        let mut theirs = other.words.iter().peekable();
        for w in &self.words {
            while theirs.next_if(|o| *o < w).is_some() {}
            if theirs.peek() != Some(&w) {
                out.push(w.clone());
            }
        }
        out
    }

    pub fn symmetric_difference_len(&self, other: &MawSet) -> usize {
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < self.words.len() && j < other.words.len() {
            match self.words[i].cmp(&other.words[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        self.words.len() + other.words.len() - 2 * common
    }

    /// Image of the set under word reversal, for the reversed subject.
    pub fn reversed(&self) -> MawSet {
        MawSet::from_words(
            self.subject_length,
            self.alphabet.clone(),
            self.words.iter().map(Word::reversed).collect(),
        )
    }
}

impl<'a> IntoIterator for &'a MawSet {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// Conditions (A), (B), (C) checked with the naive substring scan.
pub fn is_maw(w: &Word, subject: &[Symbol], alphabet: &Alphabet) -> Result<bool> {
    alphabet.validate(w.as_slice())?;
    alphabet.validate(subject)?;
    Ok(!occurs_or_empty(w.as_slice(), subject)
        && occurs_or_empty(w.tail(), subject)
        && occurs_or_empty(w.head(), subject))
}

/// Every distinct substring of a subject (including the empty one) together
/// with the set of symbols that follow some occurrence of it.
struct SubstringTable<'s> {
    followers: HashMap<&'s [Symbol], [u64; 4]>,
}

impl<'s> SubstringTable<'s> {
    fn new(subject: &'s [Symbol]) -> Self {
        let n = subject.len();
        let mut followers: HashMap<&[Symbol], [u64; 4]> = HashMap::with_capacity(n * (n + 1) / 2 + 1);
        followers.insert(&subject[..0], [0; 4]);
        for start in 0..n {
            for end in start..=n {
                let entry = followers.entry(&subject[start..end]).or_insert([0; 4]);
                if let Some(&next) = subject.get(end) {
                    entry[usize::from(next) / 64] |= 1 << (next % 64);
                }
            }
        }
        Self { followers }
    }

    fn occurs(&self, s: &[Symbol]) -> bool {
        self.followers.contains_key(s)
    }

    fn followers_of(&self, s: &[Symbol]) -> impl Iterator<Item = Symbol> + '_ {
        let bits = self.followers.get(s).copied().unwrap_or([0; 4]);
        (0..4u8).flat_map(move |word| {
            let mut rest = bits[usize::from(word)];
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let bit = rest.trailing_zeros() as u8;
                    rest &= rest - 1;
                    word * 64 + bit
                })
            })
        })
    }
}

/// All MAWs of `subject`, found by testing each length-1 candidate in the
/// alphabet and each `a·u·b` with `a·u` and `u·b` substrings of `subject`.
///
/// The empty subject yields the whole alphabet.
pub fn enumerate_maws_naive(subject: &[Symbol], alphabet: &Alphabet) -> Result<MawSet> {
    alphabet.validate(subject)?;
    let table = SubstringTable::new(subject);
    let mut words = Vec::new();
    for &c in alphabet.symbols() {
        if !table.occurs(&[c]) {
            words.push(Word::from_vec_unchecked(vec![c]));
        }
    }
    let mut candidate = Vec::with_capacity(subject.len() + 1);
    for &au in table.followers.keys().filter(|k| !k.is_empty()) {
        let u = &au[1..];
        for b in table.followers_of(u) {
            candidate.clear();
            candidate.extend_from_slice(au);
            candidate.push(b);
            let absent = !table.occurs(&candidate);
            if absent && table.occurs(&candidate[1..]) && table.occurs(&candidate[..candidate.len() - 1]) {
                words.push(Word::from_vec_unchecked(candidate.clone()));
            }
        }
    }
    Ok(MawSet::from_words(subject.len(), alphabet.clone(), words))
}

/// Checks a claimed MAW set against the definition: every member must satisfy
/// `is_maw`. Used by tests and campaigns to report the first bad word.
pub fn first_non_maw<'a>(set: &'a MawSet, subject: &[Symbol]) -> Result<Option<&'a Word>> {
    for w in set {
        if !is_maw(w, subject, &set.alphabet)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub(crate) fn check_same_alphabet(a: &MawSet, b: &MawSet) -> Result<()> {
    if a.alphabet != b.alphabet {
        return Err(MawError::InvalidParameter(format!(
            "comparing MAW sets over different alphabets {} and {}",
            a.alphabet, b.alphabet
        )));
    }
    Ok(())
}
