//! Suffix automaton (DAWG) of a subject and the MAW enumerator built on it.
//!
//! For a state `q` with suffix link `p`, let `u` be the longest word of `p`
//! and `a·u` the shortest word of `q`. Then `a·u·b` is a MAW exactly when `b`
//! labels an edge out of `p` but not out of `q`. Every MAW of length at least
//! two arises once this way, which gives an `O(σ n)` enumeration.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{Alphabet, Symbol, Word};
use crate::oracle::MawSet;

const NONE: u32 = u32::MAX;

/// Largest number of distinct subject symbols stored in dense rows.
pub const DENSE_LIMIT: usize = 16;

#[derive(Debug, Clone)]
enum Edges {
    /// One row of `DENSE_LIMIT` targets per state, indexed by symbol rank.
    Dense(Vec<[u32; DENSE_LIMIT]>),
    /// Per-state `(rank, target)` pairs sorted by rank.
    Sparse(Vec<Vec<(u8, u32)>>),
}

impl Edges {
    fn push_state(&mut self) {
        match self {
            Edges::Dense(rows) => rows.push([NONE; DENSE_LIMIT]),
            Edges::Sparse(rows) => rows.push(Vec::new()),
        }
    }

    fn get(&self, state: u32, rank: u8) -> Option<u32> {
        match self {
            Edges::Dense(rows) => {
                let t = rows[state as usize][usize::from(rank)];
                (t != NONE).then_some(t)
            }
            Edges::Sparse(rows) => {
                let row = &rows[state as usize];
                row.binary_search_by_key(&rank, |&(r, _)| r).ok().map(|i| row[i].1)
            }
        }
    }

    fn set(&mut self, state: u32, rank: u8, target: u32) {
        match self {
            Edges::Dense(rows) => rows[state as usize][usize::from(rank)] = target,
            Edges::Sparse(rows) => {
                let row = &mut rows[state as usize];
                match row.binary_search_by_key(&rank, |&(r, _)| r) {
                    Ok(i) => row[i].1 = target,
                    Err(i) => row.insert(i, (rank, target)),
                }
            }
        }
    }

    fn copy_row(&mut self, from: u32, to: u32) {
        match self {
            Edges::Dense(rows) => rows[to as usize] = rows[from as usize],
            Edges::Sparse(rows) => rows[to as usize] = rows[from as usize].clone(),
        }
    }

    /// Outgoing `(rank, target)` pairs in rank order.
    fn row(&self, state: u32) -> Vec<(u8, u32)> {
        match self {
            Edges::Dense(rows) => rows[state as usize]
                .iter()
                .enumerate()
                .filter(|&(_, &t)| t != NONE)
                .map(|(r, &t)| (r as u8, t))
                .collect(),
            Edges::Sparse(rows) => rows[state as usize].clone(),
        }
    }

    fn out_degree(&self, state: u32) -> usize {
        match self {
            Edges::Dense(rows) => rows[state as usize].iter().filter(|&&t| t != NONE).count(),
            Edges::Sparse(rows) => rows[state as usize].len(),
        }
    }
}

/// Minimal automaton of all substrings of a subject.
#[derive(Debug, Clone)]
pub struct SuffixAutomaton {
    subject: Vec<Symbol>,
    /// Distinct subject symbols in code order; a symbol's rank is its index.
    symbols: Vec<Symbol>,
    rank: [u8; 256],
    len: Vec<u32>,
    link: Vec<u32>,
    /// End position (0-based, inclusive) of the first occurrence of the
    /// state's words.
    first_end: Vec<u32>,
    edges: Edges,
    last: u32,
}

/// State and transition counts, as reported alongside MAW sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonSize {
    pub states: usize,
    pub transitions: usize,
}

impl SuffixAutomaton {
    /// Online construction, one symbol at a time.
    pub fn build(subject: &[Symbol]) -> Self {
        let mut present = [false; 256];
        for &c in subject {
            present[usize::from(c)] = true;
        }
        let symbols: Vec<Symbol> = (0..=255u8).filter(|&c| present[usize::from(c)]).collect();
        let mut rank = [u8::MAX; 256];
        for (r, &c) in symbols.iter().enumerate() {
            rank[usize::from(c)] = r as u8;
        }
        let capacity = 2 * subject.len() + 1;
        let mut edges = if symbols.len() <= DENSE_LIMIT {
            Edges::Dense(Vec::with_capacity(capacity))
        } else {
            Edges::Sparse(Vec::with_capacity(capacity))
        };
        edges.push_state();
        let mut sa = Self {
            subject: subject.to_vec(),
            symbols,
            rank,
            len: vec![0],
            link: vec![NONE],
            first_end: vec![NONE],
            edges,
            last: 0,
        };
        for (pos, &c) in subject.iter().enumerate() {
            sa.extend(sa.rank[usize::from(c)], pos as u32);
        }
        sa
    }

    fn new_state(&mut self, len: u32, link: u32, first_end: u32) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.first_end.push(first_end);
        self.edges.push_state();
        (self.len.len() - 1) as u32
    }

    fn extend(&mut self, c: u8, pos: u32) {
        let cur = self.new_state(self.len[self.last as usize] + 1, NONE, pos);
        let mut p = self.last;
        while p != NONE && self.edges.get(p, c).is_none() {
            self.edges.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.edges.get(p, c).expect("loop stopped on an existing edge");
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.new_state(
                    self.len[p as usize] + 1,
                    self.link[q as usize],
                    self.first_end[q as usize],
                );
                self.edges.copy_row(q, clone);
                while p != NONE && self.edges.get(p, c) == Some(q) {
                    self.edges.set(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    pub fn subject(&self) -> &[Symbol] {
        &self.subject
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    pub fn transition_count(&self) -> usize {
        (0..self.state_count() as u32).map(|s| self.edges.out_degree(s)).sum()
    }

    pub fn size(&self) -> AutomatonSize {
        AutomatonSize { states: self.state_count(), transitions: self.transition_count() }
    }

    pub fn uses_dense_rows(&self) -> bool {
        matches!(self.edges, Edges::Dense(_))
    }

    /// Whether `word` is a substring of the subject. The empty word is.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut state = 0;
        for &c in word {
            let r = self.rank[usize::from(c)];
            if r == u8::MAX {
                return false;
            }
            match self.edges.get(state, r) {
                Some(t) => state = t,
                None => return false,
            }
        }
        true
    }

    /// The MAWs of the subject over `alphabet`, canonical order.
    pub fn maws(&self, alphabet: &Alphabet) -> Result<MawSet> {
        alphabet.validate(&self.subject)?;
        let mut words: Vec<Word> = alphabet
            .symbols()
            .iter()
            .filter(|&&c| self.rank[usize::from(c)] == u8::MAX)
            .map(|&c| Word::from_vec_unchecked(vec![c]))
            .collect();
        for q in 1..self.state_count() as u32 {
            let p = self.link[q as usize];
            let parent_len = self.len[p as usize] as usize;
            let end = self.first_end[q as usize] as usize;
            // a·u, the shortest word of q, ends at `end`
            let au = &self.subject[end - parent_len..=end];
            for (r, _) in self.edges.row(p) {
                if self.edges.get(q, r).is_none() {
                    let mut w = Vec::with_capacity(au.len() + 1);
                    w.extend_from_slice(au);
                    w.push(self.symbols[usize::from(r)]);
                    words.push(Word::from_vec_unchecked(w));
                }
            }
        }
        Ok(MawSet::from_words(self.subject.len(), alphabet.clone(), words))
    }
}

pub fn build_automaton(subject: &[Symbol]) -> SuffixAutomaton {
    SuffixAutomaton::build(subject)
}

/// MAWs via the suffix automaton; same set and order as the oracle.
pub fn enumerate_maws_fast(subject: &[Symbol], alphabet: &Alphabet) -> Result<MawSet> {
    alphabet.validate(subject)?;
    SuffixAutomaton::build(subject).maws(alphabet)
}
