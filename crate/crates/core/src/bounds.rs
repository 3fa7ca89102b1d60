//! Closed-form upper bounds on MAW-set changes, and verdicts against them.
//!
//! Every bound is an integer right-hand side; a verdict records it next to
//! the measured value. [`check_step`] emits exactly the verdicts whose
//! hypotheses the step satisfies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MawError, Result};
use crate::model::{window_stats, Text, WindowStats};
use crate::slide::{DeltaReport, Direction, SlideSummary};

/// Identifies one bound. The names are stable and appear verbatim in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundId {
    PriorCrochemoreAppend,
    PriorCrochemoreDelete,
    GeneralAppend,
    OccurringAppend,
    GeneralDelete,
    BinaryAppend,
    BinarySmallD,
    Type1Cap,
    Type2Cap,
    Type3Cap,
    Type3CapBinary,
    M12Collide,
    M12BinaryCollide,
    M123BinaryCap,
    TotalSigmaN,
    TotalDN,
}

impl BoundId {
    pub const ALL: [BoundId; 16] = [
        BoundId::PriorCrochemoreAppend,
        BoundId::PriorCrochemoreDelete,
        BoundId::GeneralAppend,
        BoundId::OccurringAppend,
        BoundId::GeneralDelete,
        BoundId::BinaryAppend,
        BoundId::BinarySmallD,
        BoundId::Type1Cap,
        BoundId::Type2Cap,
        BoundId::Type3Cap,
        BoundId::Type3CapBinary,
        BoundId::M12Collide,
        BoundId::M12BinaryCollide,
        BoundId::M123BinaryCap,
        BoundId::TotalSigmaN,
        BoundId::TotalDN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::PriorCrochemoreAppend => "PriorCrochemoreAppend",
            BoundId::PriorCrochemoreDelete => "PriorCrochemoreDelete",
            BoundId::GeneralAppend => "GeneralAppend",
            BoundId::OccurringAppend => "OccurringAppend",
            BoundId::GeneralDelete => "GeneralDelete",
            BoundId::BinaryAppend => "BinaryAppend",
            BoundId::BinarySmallD => "BinarySmallD",
            BoundId::Type1Cap => "Type1Cap",
            BoundId::Type2Cap => "Type2Cap",
            BoundId::Type3Cap => "Type3Cap",
            BoundId::Type3CapBinary => "Type3CapBinary",
            BoundId::M12Collide => "M12Collide",
            BoundId::M12BinaryCollide => "M12BinaryCollide",
            BoundId::M123BinaryCap => "M123BinaryCap",
            BoundId::TotalSigmaN => "TotalSigmaN",
            BoundId::TotalDN => "TotalDN",
        }
    }

    /// Bounds that apply to a single step (everything but the totals).
    pub fn per_step() -> impl Iterator<Item = BoundId> {
        Self::ALL.into_iter().filter(|b| !matches!(b, BoundId::TotalSigmaN | BoundId::TotalDN))
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = MawError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| MawError::InvalidParameter(format!("unknown bound id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub bound_id: BoundId,
    pub bound_value: i64,
    pub observed: i64,
    pub satisfied: bool,
    pub slack: i64,
}

impl BoundVerdict {
    pub fn new(bound_id: BoundId, bound_value: i64, observed: i64) -> Self {
        Self { bound_id, bound_value, observed, satisfied: observed <= bound_value, slack: bound_value - observed }
    }

    /// The same comparison against `bound_value - offset`. Used to check that
    /// a deliberately tightened bound is caught.
    pub fn shifted(self, offset: i64) -> Self {
        Self::new(self.bound_id, self.bound_value - offset, self.observed)
    }
}

fn count(n: usize) -> i64 {
    i64::try_from(n).expect("count fits in i64")
}

/// `(s_i - s_α)(σ - 1) + σ + 1`, the formula exactly as written.
pub fn prior_formula(s_i: usize, s_alpha: usize, sigma: usize) -> i64 {
    (count(s_i) - count(s_alpha)) * (count(sigma) - 1) + count(sigma) + 1
}

/// Prior per-append bound with global alphabet size `sigma`.
///
/// When `α` does not occur in the window no suffix at all (not even the empty
/// one) is followed by it, so the gap `s_i - s_α` grows by one. Without that
/// the formula fails already on `01 + 2` over `{0,1,2}`.
pub fn bound_prior_append(stats: &WindowStats, sigma: usize) -> i64 {
    let gap = count(stats.longest_repeating_suffix) - count(stats.longest_suffix_followed_by_next)
        + i64::from(!stats.next_occurs);
    gap * (count(sigma) - 1) + count(sigma) + 1
}

/// Mirror image of [`bound_prior_append`] for dropping the symbol `β` before
/// the window, using `p_i` and `p_β`.
pub fn bound_prior_delete(stats: &WindowStats, sigma: usize) -> i64 {
    let gap = count(stats.longest_repeating_prefix) - count(stats.longest_prefix_preceded_by_prev)
        + i64::from(!stats.prev_occurs);
    gap * (count(sigma) - 1) + count(sigma) + 1
}

/// `σ_{i,j} + d + 1`; holds for every append and every delete step.
pub fn bound_general_append(d: usize, sigma_window: usize) -> i64 {
    count(sigma_window) + count(d) + 1
}

pub fn bound_general_delete(d: usize, sigma_window: usize) -> i64 {
    bound_general_append(d, sigma_window)
}

/// `σ_{i,j+1} + d`, when `α` already occurs in the window.
pub fn bound_occurring_append(d: usize, sigma_ext: usize) -> i64 {
    count(sigma_ext) + count(d)
}

/// `max(3, d)`, when the extended window has two distinct symbols.
pub fn bound_binary_append(d: usize) -> i64 {
    count(d).max(3)
}

/// Certified cap on `S(T, d)`.
///
/// A slide step is one append plus one delete, each bounded by
/// `min(d, σ) + d + 1`, so the cap carries a factor 2. The single-factor form
/// is [`bound_total_single`]; the `(a_1…a_{d+1})^e` family exceeds it.
pub fn bound_total(n: usize, d: usize, sigma_max_window: usize) -> i64 {
    2 * bound_total_single(n, d, sigma_max_window)
}

/// `(n - d)(min(d, σ) + d + 1)`.
pub fn bound_total_single(n: usize, d: usize, sigma_max_window: usize) -> i64 {
    count(n.saturating_sub(d)) * (count(d.min(sigma_max_window)) + count(d) + 1)
}

/// Every per-step verdict whose hypotheses hold for `report`.
pub fn check_step(report: &DeltaReport, sigma_global: usize) -> Vec<BoundVerdict> {
    let d = report.d;
    let delta = count(report.delta());
    let mut out = Vec::new();
    match report.direction {
        Direction::Append => {
            let m1 = count(report.by_type.type1.len());
            let m2 = count(report.by_type.type2.len());
            let m3 = count(report.by_type.type3.len());
            let binary = report.sigma_ext == 2;
            out.push(BoundVerdict::new(
                BoundId::PriorCrochemoreAppend,
                bound_prior_append(&report.stats, sigma_global),
                delta,
            ));
            out.push(BoundVerdict::new(BoundId::GeneralAppend, bound_general_append(d, report.sigma_window), delta));
            if report.symbol_occurs {
                out.push(BoundVerdict::new(BoundId::OccurringAppend, bound_occurring_append(d, report.sigma_ext), delta));
            }
            if binary && d >= 3 {
                out.push(BoundVerdict::new(BoundId::BinaryAppend, bound_binary_append(d), delta));
            }
            if binary && d <= 2 {
                out.push(BoundVerdict::new(BoundId::BinarySmallD, 3, delta));
            }
            out.push(BoundVerdict::new(BoundId::Type1Cap, 1, m1));
            out.push(BoundVerdict::new(BoundId::Type2Cap, count(report.sigma_window), m2));
            out.push(BoundVerdict::new(BoundId::Type3Cap, count(d) - 1, m3));
            if binary && d >= 3 {
                out.push(BoundVerdict::new(BoundId::Type3CapBinary, count(d) - 2, m3));
            }
            if report.symbol_occurs && d >= 3 {
                out.push(BoundVerdict::new(BoundId::M12Collide, count(report.sigma_window), m1 + m2));
                if binary {
                    out.push(BoundVerdict::new(BoundId::M12BinaryCollide, 2, m1 + m2));
                }
            }
            if binary && d >= 3 {
                out.push(BoundVerdict::new(BoundId::M123BinaryCap, count(d) - 1, m1 + m2 + m3));
            }
        }
        Direction::Delete => {
            out.push(BoundVerdict::new(
                BoundId::PriorCrochemoreDelete,
                bound_prior_delete(&report.stats, sigma_global),
                delta,
            ));
            out.push(BoundVerdict::new(BoundId::GeneralDelete, bound_general_delete(d, report.sigma_window), delta));
        }
    }
    out
}

/// Prior bound summed over every step: the append bound on `T[i..i+d)` plus
/// the delete bound on `T[i+1..i+d+1)`.
pub fn bound_total_sigma(text: &Text, d: usize, sigma: usize) -> i64 {
    (0..text.len().saturating_sub(d))
        .map(|i| {
            let append = window_stats(&text[i..i + d], Some(text[i + d]), i.checked_sub(1).map(|p| text[p]));
            let delete = window_stats(&text[i + 1..i + d + 1], text.get(i + d + 1).copied(), Some(text[i]));
            bound_prior_append(&append, sigma) + bound_prior_delete(&delete, sigma)
        })
        .sum()
}

/// Verdicts on the total `S(T, d)` of a slide.
pub fn check_summary(text: &Text, summary: &SlideSummary) -> Vec<BoundVerdict> {
    let total = count(summary.total);
    vec![
        BoundVerdict::new(BoundId::TotalSigmaN, bound_total_sigma(text, summary.d, summary.sigma), total),
        BoundVerdict::new(BoundId::TotalDN, bound_total(summary.n, summary.d, summary.sigma_max_window), total),
    ]
}

/// `S(T, d) / ((n - d) · min(d, σ))`, kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessRatio {
    pub numerator: u64,
    pub denominator: u64,
}

impl TightnessRatio {
    pub fn of(summary: &SlideSummary) -> Self {
        let numerator = summary.total as u64;
        let denominator = (summary.n.saturating_sub(summary.d) * summary.d.min(summary.sigma)) as u64;
        Self { numerator, denominator }
    }

    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for TightnessRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;
    use crate::model::{Alphabet, Window};
    use crate::slide::{append_delta, delete_delta, slide_totals};

    fn append(s: &str, alpha: u8, sigma: &str) -> DeltaReport {
        append_delta(Window::whole(s.as_bytes()).unwrap(), alpha, &Alphabet::parse(sigma).unwrap(), Engine::Automaton)
            .unwrap()
    }

    fn verdict(vs: &[BoundVerdict], id: BoundId) -> Option<BoundVerdict> {
        vs.iter().copied().find(|v| v.bound_id == id)
    }

    #[test]
    fn formulas() {
        assert_eq!(prior_formula(2, 0, 5), 14);
        assert_eq!(prior_formula(3, 3, 7), 8);
        assert_eq!(bound_general_append(6, 4), 11);
        assert_eq!(bound_general_append(1, 1), 3);
        assert_eq!(bound_general_append(9, 2), 12);
        assert_eq!(bound_occurring_append(5, 2), 7);
        assert_eq!(bound_occurring_append(3, 3), 6);
        assert_eq!((bound_binary_append(1), bound_binary_append(2), bound_binary_append(5)), (3, 3, 5));
        assert_eq!(bound_total_single(10, 4, 2), 6 * 7);
        assert_eq!(bound_total(10, 4, 2), 2 * 6 * 7);
    }

    #[test]
    fn names_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert_eq!(BoundId::per_step().count(), 14);
    }

    #[test]
    fn binary_extremal_verdicts() {
        let vs = check_step(&append("00111", b'0', "01"), 2);
        assert_eq!(verdict(&vs, BoundId::GeneralAppend).unwrap().slack, 3);
        assert_eq!(verdict(&vs, BoundId::OccurringAppend).unwrap().slack, 2);
        assert_eq!(verdict(&vs, BoundId::BinaryAppend).unwrap().slack, 0);
        assert_eq!(verdict(&vs, BoundId::Type3CapBinary).unwrap().slack, 1);
        assert_eq!(verdict(&vs, BoundId::M123BinaryCap).unwrap().slack, 0);
        assert_eq!(verdict(&vs, BoundId::M12BinaryCollide).unwrap().slack, 0);
        assert!(verdict(&vs, BoundId::BinarySmallD).is_none());
        assert!(vs.iter().all(|v| v.satisfied));
    }

    #[test]
    fn z_verdicts() {
        let r = append("abcddd", b'e', "abcde");
        assert_eq!(r.stats.longest_repeating_suffix, 2);
        assert_eq!(r.stats.longest_suffix_followed_by_next, 0);
        let vs = check_step(&r, 5);
        assert_eq!(verdict(&vs, BoundId::GeneralAppend).unwrap().slack, 0);
        let prior = verdict(&vs, BoundId::PriorCrochemoreAppend).unwrap();
        assert_eq!((prior.bound_value, prior.slack), (18, 7));
        assert!(verdict(&vs, BoundId::OccurringAppend).is_none());
        assert!(verdict(&vs, BoundId::M12Collide).is_none());
    }

    #[test]
    fn literal_prior_formula_fails_on_fresh_symbol() {
        let r = append("01", b'2', "012");
        assert_eq!(r.delta(), 5);
        assert_eq!(prior_formula(r.stats.longest_repeating_suffix, r.stats.longest_suffix_followed_by_next, 3), 4);
        assert_eq!(bound_prior_append(&r.stats, 3), 6);
    }

    #[test]
    fn unary_verdicts() {
        let vs = check_step(&append("0000", b'0', "01"), 2);
        assert!(vs.iter().all(|v| v.satisfied));
        // every bound on the change itself has room to spare
        assert!(vs.iter().filter(|v| v.observed == 2).all(|v| v.slack > 0));
        assert!(verdict(&vs, BoundId::BinaryAppend).is_none());
    }

    #[test]
    fn small_d_binary() {
        for (s, a) in [("1", b'0'), ("11", b'0')] {
            let vs = check_step(&append(s, a, "01"), 2);
            assert_eq!(verdict(&vs, BoundId::BinarySmallD).unwrap().slack, 0);
        }
    }

    #[test]
    fn delete_verdicts() {
        let sigma = Alphabet::parse("abcde").unwrap();
        let r = delete_delta(Window::whole(b"edddcba").unwrap(), &sigma, Engine::Automaton).unwrap();
        let vs = check_step(&r, 5);
        assert_eq!(vs.len(), 2);
        assert_eq!(verdict(&vs, BoundId::GeneralDelete).unwrap().slack, 0);
    }

    #[test]
    fn shifted_verdicts_flip() {
        let v = BoundVerdict::new(BoundId::BinaryAppend, 5, 5);
        assert!(v.satisfied);
        let w = v.shifted(1);
        assert!(!w.satisfied);
        assert_eq!(w.slack, -1);
    }

    #[test]
    fn totals() {
        let ab = Alphabet::parse("ab").unwrap();
        let t = Text::parse(&"ab".repeat(10), &ab).unwrap();
        let s = slide_totals(&t, 4, &ab, Engine::Automaton).unwrap();
        let vs = check_summary(&t, &s);
        assert!(vs.iter().all(|v| v.satisfied));
        let r = TightnessRatio::of(&s);
        assert_eq!((r.numerator, r.denominator), (32, 32));
        assert_eq!(r.to_string(), "32/32");
    }
}
