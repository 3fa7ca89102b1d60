//! Exact MAW-set changes for single slide steps and whole texts.
//!
//! An append step extends a window `S` by one symbol `α`; a delete step drops
//! the first symbol `β` of `βS`. Both are literal set differences of two full
//! MAW sets. Words added by an append are classified by which of their two
//! maximal proper factors already occurred in `S`:
//!
//! | type  | `w[1..]` in `S` | `w[..|w|-1]` in `S` |
//! |-------|-----------------|---------------------|
//! | Type1 | no              | no                  |
//! | Type2 | yes             | no                  |
//! | Type3 | no              | yes                 |
//!
//! Type-3 words map injectively to the end of the leftmost occurrence of
//! their prefix in `S`. With 0-based positions that end lies in `[0, d-2]`,
//! and in `[1, d-2]` when `Sα` has exactly two distinct symbols and `d >= 3`
//! (1-based: `[i, j-1]` and `[2, d-1]`).
//!
//! Delete steps are computed by reversal: `βS` reversed is `rev(S)·β`, so a
//! delete is the mirror image of an append on the reversed window.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundVerdict;
use crate::engine::Engine;
use crate::error::{MawError, Result};
use crate::model::{
    distinct_count, find, occurs, reversed, symbol_serde, symbols_to_string, window_stats, Alphabet,
    Symbol, Text, Window, WindowSpan, WindowStats, Word,
};
use crate::oracle::{check_same_alphabet, MawSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MawType {
    Type1,
    Type2,
    Type3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Append,
    Delete,
}

/// Words of one step split by [`MawType`], each list in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypePartition {
    pub type1: Vec<Word>,
    pub type2: Vec<Word>,
    pub type3: Vec<Word>,
}

impl TypePartition {
    pub fn get(&self, t: MawType) -> &[Word] {
        match t {
            MawType::Type1 => &self.type1,
            MawType::Type2 => &self.type2,
            MawType::Type3 => &self.type3,
        }
    }

    pub fn total(&self) -> usize {
        self.type1.len() + self.type2.len() + self.type3.len()
    }

    fn push(&mut self, t: MawType, w: Word) {
        match t {
            MawType::Type1 => self.type1.push(w),
            MawType::Type2 => self.type2.push(w),
            MawType::Type3 => self.type3.push(w),
        }
    }

    fn reversed(&self) -> Self {
        let rev = |ws: &[Word]| {
            let mut out: Vec<Word> = ws.iter().map(Word::reversed).collect();
            out.sort();
            out
        };
        Self { type1: rev(&self.type1), type2: rev(&self.type2), type3: rev(&self.type3) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectionEntry {
    pub word: Word,
    pub position: usize,
}

/// Everything measured about one append or delete step.
///
/// `d`, `sigma_window` and `stats` always describe the length-`d` window `S`;
/// `sigma_ext` describes the length-`d+1` window (`Sα` or `βS`). On an append
/// `by_type` partitions `added`; on a delete it partitions `deleted`, mirrored
/// (it is the partition of the reversed append step, reversed back), and the
/// injection positions are starts of the rightmost occurrence of `w[1..]` in
/// `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub direction: Direction,
    pub before: WindowSpan,
    pub after: WindowSpan,
    #[serde(with = "symbol_serde")]
    pub symbol: Symbol,
    pub symbol_occurs: bool,
    pub d: usize,
    pub sigma_window: usize,
    pub sigma_ext: usize,
    pub stats: WindowStats,
    pub deleted: Vec<Word>,
    pub added: Vec<Word>,
    pub by_type: TypePartition,
    pub injection_witness: Vec<InjectionEntry>,
    #[serde(default)]
    pub bound_verdicts: Vec<BoundVerdict>,
}

impl DeltaReport {
    /// Size of the symmetric difference.
    pub fn delta(&self) -> usize {
        self.deleted.len() + self.added.len()
    }

    /// Whether the length-`d+1` window has exactly two distinct symbols.
    pub fn binary_regime(&self) -> bool {
        self.sigma_ext == 2
    }

    pub fn witness(&self) -> String {
        step_witness(self.direction, self.window_content().as_bytes(), self.symbol)
    }

    /// Content of the length-`d` window.
    pub fn window_content(&self) -> &str {
        match self.direction {
            Direction::Append => &self.before.content,
            Direction::Delete => &self.after.content,
        }
    }
}

pub(crate) fn step_witness(direction: Direction, window: &[Symbol], symbol: Symbol) -> String {
    let shown = symbols_to_string(window);
    match direction {
        Direction::Append => format!("S={shown:?} append {:?}", char::from(symbol)),
        Direction::Delete => format!("S={shown:?} delete leading {:?}", char::from(symbol)),
    }
}

/// Type of a word added by appending to `pre_window`.
///
/// A length-1 word counts as Type1. A word whose both maximal proper factors
/// occur in `pre_window` cannot have been added and is reported as a
/// consistency error.
pub fn classify_added(w: &Word, pre_window: &[Symbol]) -> Result<MawType> {
    if w.len() == 1 {
        return Ok(MawType::Type1);
    }
    match (occurs(w.tail(), pre_window), occurs(w.head(), pre_window)) {
        (false, false) => Ok(MawType::Type1),
        (true, false) => Ok(MawType::Type2),
        (false, true) => Ok(MawType::Type3),
        (true, true) => Err(MawError::Consistency(format!(
            "both maximal proper factors of {w} occur in {:?}, so it was not added",
            symbols_to_string(pre_window)
        ))),
    }
}

/// Maps each Type-3 word to the (0-based) end of the leftmost occurrence of
/// its prefix `w[..|w|-1]` in `pre_window`, checking injectivity and the range
/// `[0, d-2]`, narrowed to `[1, d-2]` in the binary regime with `d >= 3`.
pub fn type3_injection(m3: &[Word], pre_window: &[Symbol]) -> Result<Vec<InjectionEntry>> {
    let Some(alpha) = m3.first().map(Word::last) else {
        return Ok(Vec::new());
    };
    let d = pre_window.len();
    let sigma_ext = distinct_count(pre_window) + usize::from(!pre_window.contains(&alpha));
    let binary = sigma_ext == 2 && d >= 3;
    let falsified = |claim: &str| MawError::Falsified {
        claim: claim.to_string(),
        witness: step_witness(Direction::Append, pre_window, alpha),
    };
    let mut entries = Vec::with_capacity(m3.len());
    let mut used = vec![false; d];
    for w in m3 {
        let head = w.head();
        let start = find(head, pre_window).filter(|_| !head.is_empty()).ok_or_else(|| {
            MawError::Consistency(format!("{w} is not Type 3: its prefix does not occur"))
        })?;
        let position = start + head.len() - 1;
        if position + 1 >= d {
            return Err(falsified("Type-3 injection avoids the last window position"));
        }
        if binary && position == 0 {
            return Err(falsified("binary Type-3 injection avoids the first window position"));
        }
        if std::mem::replace(&mut used[position], true) {
            return Err(falsified("Type-3 injection is injective"));
        }
        entries.push(InjectionEntry { word: w.clone(), position });
    }
    Ok(entries)
}

/// Builds the append report from precomputed MAW sets of `S` and `Sα`.
pub(crate) fn analyze_append(
    pre: &[Symbol],
    start: usize,
    prev: Option<Symbol>,
    alpha: Symbol,
    before_set: &MawSet,
    after_set: &MawSet,
) -> Result<DeltaReport> {
    check_same_alphabet(before_set, after_set)?;
    let deleted = before_set.difference(after_set);
    let added = after_set.difference(before_set);
    if deleted.len() != 1 {
        return Err(MawError::Falsified {
            claim: format!("exactly one MAW is deleted on append (found {})", deleted.len()),
            witness: step_witness(Direction::Append, pre, alpha),
        });
    }
    let mut by_type = TypePartition::default();
    for w in &added {
        by_type.push(classify_added(w, pre)?, w.clone());
    }
    let injection_witness = type3_injection(&by_type.type3, pre)?;
    let mut extended = pre.to_vec();
    extended.push(alpha);
    let symbol_occurs = pre.contains(&alpha);
    Ok(DeltaReport {
        direction: Direction::Append,
        before: WindowSpan { start, len: pre.len(), content: symbols_to_string(pre) },
        after: WindowSpan { start, len: pre.len() + 1, content: symbols_to_string(&extended) },
        symbol: alpha,
        symbol_occurs,
        d: pre.len(),
        sigma_window: distinct_count(pre),
        sigma_ext: distinct_count(&extended),
        stats: window_stats(pre, Some(alpha), prev),
        deleted,
        added,
        by_type,
        injection_witness,
        bound_verdicts: Vec::new(),
    })
}

/// Change of the MAW set when `alpha` is appended to `window`.
pub fn append_delta(window: Window<'_>, alpha: Symbol, alphabet: &Alphabet, engine: Engine) -> Result<DeltaReport> {
    let pre = window.content();
    alphabet.validate(pre)?;
    alphabet.validate(&[alpha]).map_err(|_| MawError::SymbolNotInAlphabet { symbol: alpha, position: pre.len() })?;
    let mut extended = pre.to_vec();
    extended.push(alpha);
    let before_set = engine.maws(pre, alphabet)?;
    let after_set = engine.maws(&extended, alphabet)?;
    analyze_append(pre, window.start(), window.prev_symbol(), alpha, &before_set, &after_set)
}

/// Converts the append report of `rev(S)·β` into the delete report of `βS → S`.
pub(crate) fn mirror_into_delete(
    rev: DeltaReport,
    window_start: usize,
    full: &[Symbol],
    next: Option<Symbol>,
) -> DeltaReport {
    let beta = full[0];
    let short = &full[1..];
    let d = short.len();
    let mirror = |ws: &[Word]| {
        let mut out: Vec<Word> = ws.iter().map(Word::reversed).collect();
        out.sort();
        out
    };
    let mut injection_witness: Vec<InjectionEntry> = rev
        .injection_witness
        .iter()
        .map(|e| InjectionEntry { word: e.word.reversed(), position: d - 1 - e.position })
        .collect();
    injection_witness.sort_by(|a, b| a.word.cmp(&b.word));
    DeltaReport {
        direction: Direction::Delete,
        before: WindowSpan { start: window_start, len: d + 1, content: symbols_to_string(full) },
        after: WindowSpan { start: window_start + 1, len: d, content: symbols_to_string(short) },
        symbol: beta,
        symbol_occurs: rev.symbol_occurs,
        d,
        sigma_window: rev.sigma_window,
        sigma_ext: rev.sigma_ext,
        stats: window_stats(short, next, Some(beta)),
        deleted: mirror(&rev.added),
        added: mirror(&rev.deleted),
        by_type: rev.by_type.reversed(),
        injection_witness,
        bound_verdicts: Vec::new(),
    }
}

/// Change of the MAW set when the first symbol of `window` (`βS`) is dropped.
pub fn delete_delta(window: Window<'_>, alphabet: &Alphabet, engine: Engine) -> Result<DeltaReport> {
    let full = window.content();
    if full.len() < 2 {
        return Err(MawError::InvalidParameter(
            "a delete step needs a window of length at least 2".into(),
        ));
    }
    alphabet.validate(full)?;
    let beta = full[0];
    let rev_short = reversed(&full[1..]);
    let rev_full = reversed(full);
    let before_set = engine.maws(&rev_short, alphabet)?;
    let after_set = engine.maws(&rev_full, alphabet)?;
    let rev = analyze_append(&rev_short, 0, None, beta, &before_set, &after_set).map_err(|e| match e {
        MawError::Falsified { claim, .. } => MawError::Falsified {
            claim: format!("{claim} (reversed)"),
            witness: step_witness(Direction::Delete, &full[1..], beta),
        },
        other => other,
    })?;
    Ok(mirror_into_delete(rev, window.start(), full, window.next_symbol()))
}

/// Per-step change sizes of a whole slide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideSummary {
    pub n: usize,
    pub d: usize,
    /// Size of the declared alphabet.
    pub sigma: usize,
    /// Largest number of distinct symbols in any length-`d` window.
    pub sigma_max_window: usize,
    /// `per_step[i] = |MAW(T[i..i+d)) △ MAW(T[i+1..i+d+1))|`.
    pub per_step: Vec<usize>,
    pub total: usize,
}

fn check_window_length(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n {
        return Err(MawError::InvalidParameter(format!(
            "window length must satisfy 1 <= d < n, got d = {d}, n = {n}"
        )));
    }
    Ok(())
}

/// MAW sets of every length-`d` window, left to right.
pub fn window_maw_sets(text: &Text, d: usize, alphabet: &Alphabet, engine: Engine) -> Result<Vec<MawSet>> {
    alphabet.validate(text)?;
    let count = text.len().saturating_sub(d) + 1;
    (0..count).into_par_iter().map(|i| engine.maws(&text[i..i + d], alphabet)).collect()
}

/// Sizes of the MAW-set change between every pair of adjacent windows, and
/// their total `S(T, d)`.
pub fn slide_totals(text: &Text, d: usize, alphabet: &Alphabet, engine: Engine) -> Result<SlideSummary> {
    check_window_length(text.len(), d)?;
    let sets = window_maw_sets(text, d, alphabet, engine)?;
    let per_step: Vec<usize> = sets.windows(2).map(|p| p[0].symmetric_difference_len(&p[1])).collect();
    let sigma_max_window = text.windows(d).map(|w| distinct_count(w.content())).max().unwrap_or(0);
    Ok(SlideSummary {
        n: text.len(),
        d,
        sigma: alphabet.size(),
        sigma_max_window,
        total: per_step.iter().sum(),
        per_step,
    })
}

/// One full slide step `T[i..i+d) → T[i+1..i+d+1)`, split into its append
/// half and its delete half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideStep {
    pub index: usize,
    pub delta: usize,
    pub append: DeltaReport,
    pub delete: DeltaReport,
}

/// Detailed reports for every slide step.
pub fn slide_steps(text: &Text, d: usize, alphabet: &Alphabet, engine: Engine) -> Result<Vec<SlideStep>> {
    check_window_length(text.len(), d)?;
    let sets = window_maw_sets(text, d, alphabet, engine)?;
    (0..text.len() - d)
        .into_par_iter()
        .map(|i| {
            let append = append_delta(text.window(i, d)?, text[i + d], alphabet, engine)?;
            let delete = delete_delta(text.window(i, d + 1)?, alphabet, engine)?;
            let delta = sets[i].symmetric_difference_len(&sets[i + 1]);
            debug_assert!(delta <= append.delta() + delete.delta());
            Ok(SlideStep { index: i, delta, append, delete })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        let mut v: Vec<Word> = list.iter().map(|s| Word::parse(s).unwrap()).collect();
        v.sort();
        v
    }

    fn append(s: &str, alpha: u8, sigma: &str) -> DeltaReport {
        append_delta(Window::whole(s.as_bytes()).unwrap(), alpha, &Alphabet::parse(sigma).unwrap(), Engine::Oracle)
            .unwrap()
    }

    #[test]
    fn append_cbaaaa_c() {
        let r = append("cbaaaa", b'c', "abcd");
        assert_eq!(r.deleted, words(&["ac"]));
        assert_eq!(r.added, words(&["acb", "bac", "baac", "baaac"]));
        assert!(r.by_type.type1.is_empty());
        assert_eq!(r.by_type.type2, words(&["acb"]));
        assert_eq!(r.by_type.type3, words(&["bac", "baac", "baaac"]));
        assert_eq!((r.d, r.sigma_window, r.sigma_ext), (6, 3, 3));
        // prefixes b, ba, baa, baaa end at 1..=4 in "cbaaaa"; "bac" uses "ba" ending at 2
        let positions: Vec<(String, usize)> =
            r.injection_witness.iter().map(|e| (e.word.to_string(), e.position)).collect();
        assert_eq!(positions, [("bac".to_string(), 2), ("baac".to_string(), 3), ("baaac".to_string(), 4)]);
    }

    #[test]
    fn append_binary_extremal_d5() {
        let r = append("00111", b'0', "01");
        assert_eq!(r.deleted, words(&["10"]));
        assert!(r.by_type.type1.is_empty());
        assert_eq!(r.by_type.type2, words(&["100", "101"]));
        assert_eq!(r.by_type.type3, words(&["010", "0110"]));
        assert_eq!(r.delta(), 5);
    }

    #[test]
    fn append_unary_stays_small() {
        let r = append("0000", b'0', "01");
        assert_eq!(r.deleted, words(&["00000"]));
        assert_eq!(r.added, words(&["000000"]));
        assert_eq!(r.by_type.type1, words(&["000000"]));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_added(&Word::parse("acb").unwrap(), b"cbaaaa").unwrap(), MawType::Type2);
        assert_eq!(classify_added(&Word::parse("baaac").unwrap(), b"cbaaaa").unwrap(), MawType::Type3);
        assert_eq!(classify_added(&Word::parse("c").unwrap(), b"abab").unwrap(), MawType::Type1);
        assert!(matches!(
            classify_added(&Word::parse("ab").unwrap(), b"ab"),
            Err(MawError::Consistency(_))
        ));
    }

    #[test]
    fn injection_rejects_collisions() {
        assert!(type3_injection(&[], b"ab").unwrap().is_empty());
        // "aab" and "ab" would share the end of "a"; not a valid Type-3 set
        let bogus = words(&["ab", "aab"]);
        assert!(matches!(type3_injection(&bogus, b"aaa"), Err(MawError::Falsified { .. })));
    }

    #[test]
    fn append_rejects_foreign_symbol() {
        let ab = Alphabet::parse("ab").unwrap();
        assert!(matches!(
            append_delta(Window::whole(b"ab").unwrap(), b'c', &ab, Engine::Oracle),
            Err(MawError::SymbolNotInAlphabet { .. })
        ));
    }

    #[test]
    fn delete_unary() {
        let a = Alphabet::parse("a").unwrap();
        let r = delete_delta(Window::whole(b"aa").unwrap(), &a, Engine::Oracle).unwrap();
        assert_eq!(r.added, words(&["aa"]));
        assert_eq!(r.deleted, words(&["aaa"]));
        assert_eq!(r.delta(), 2);
        assert!(delete_delta(Window::whole(b"a").unwrap(), &a, Engine::Oracle).is_err());
    }

    #[test]
    fn delete_matches_direct_difference() {
        let sigma = Alphabet::parse("abc").unwrap();
        let full = b"cabaaaa";
        let r = delete_delta(Window::whole(full).unwrap(), &sigma, Engine::Oracle).unwrap();
        let big = Engine::Oracle.maws(full, &sigma).unwrap();
        let small = Engine::Oracle.maws(&full[1..], &sigma).unwrap();
        assert_eq!(r.deleted, big.difference(&small));
        assert_eq!(r.added, small.difference(&big));
        assert_eq!(r.added.len(), 1);
        assert_eq!(r.by_type.total(), r.deleted.len());
        assert_eq!(r.after.content, "abaaaa");
    }

    #[test]
    fn slide_examples() {
        let ab = Alphabet::parse("ab").unwrap();
        let t = Text::parse(&"ab".repeat(20), &ab).unwrap();
        let s = slide_totals(&t, 10, &ab, Engine::Automaton).unwrap();
        assert_eq!(s.per_step, vec![2; 30]);
        assert_eq!(s.total, 60);

        let a = Alphabet::parse("a").unwrap();
        let t = Text::parse("aaaa", &a).unwrap();
        assert_eq!(slide_totals(&t, 2, &a, Engine::Oracle).unwrap().total, 0);
        assert!(slide_totals(&t, 4, &a, Engine::Oracle).is_err());
        assert!(slide_totals(&t, 0, &a, Engine::Oracle).is_err());
    }

    #[test]
    fn slide_steps_split_each_step() {
        let sigma = Alphabet::parse("abc").unwrap();
        let t = Text::parse("abcabcabc", &sigma).unwrap();
        let steps = slide_steps(&t, 2, &sigma, Engine::Automaton).unwrap();
        assert_eq!(steps.len(), 7);
        for s in &steps {
            assert_eq!(s.delta, 6);
            assert!(s.delta <= s.append.delta() + s.delete.delta());
            assert_eq!(s.append.after.content, s.delete.before.content);
        }
    }
}
