//! Constructive string families that attain the bounds.
//!
//! Step families describe one window and one appended symbol; total
//! families describe a whole text and a window length. Every instance carries
//! its expected value, and [`FamilyInstance::check`] measures it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{bound_binary_append, bound_general_append, BoundId};
use crate::engine::Engine;
use crate::error::{MawError, Result};
use crate::model::{symbol_serde, symbols_to_string, Alphabet, Symbol, Text, Window, Word};
use crate::slide::{append_delta, slide_totals, TypePartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    ZGeneral,
    BinaryExtremal,
    BinaryOneZeros,
    UnaryV,
    TotalSigmaFamily,
    TotalDistinctFamily,
    AlternatingBinary,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::ZGeneral,
        FamilyId::BinaryExtremal,
        FamilyId::BinaryOneZeros,
        FamilyId::UnaryV,
        FamilyId::TotalSigmaFamily,
        FamilyId::TotalDistinctFamily,
        FamilyId::AlternatingBinary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::ZGeneral => "ZGeneral",
            FamilyId::BinaryExtremal => "BinaryExtremal",
            FamilyId::BinaryOneZeros => "BinaryOneZeros",
            FamilyId::UnaryV => "UnaryV",
            FamilyId::TotalSigmaFamily => "TotalSigmaFamily",
            FamilyId::TotalDistinctFamily => "TotalDistinctFamily",
            FamilyId::AlternatingBinary => "AlternatingBinary",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = MawError;

    /// Accepts the stable names, and the short forms without `Family`.
    fn from_str(s: &str) -> Result<Self> {
        let short = |id: FamilyId| id.as_str().trim_end_matches("Family").to_string();
        Self::ALL
            .into_iter()
            .find(|&id| s.eq_ignore_ascii_case(id.as_str()) || s.eq_ignore_ascii_case(&short(id)))
            .ok_or_else(|| MawError::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// Parameters an instance was built from; unused ones are `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// The measured change equals the value.
    Exact,
    /// The measured change is at least the value.
    AtLeast,
    /// Measured and reported, nothing asserted.
    Recorded,
}

/// Exact sets a step family is known to produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedSets {
    pub deleted: Vec<Word>,
    pub added: TypePartition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyStep {
    pub window: String,
    #[serde(with = "symbol_serde")]
    pub symbol: Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub family_id: FamilyId,
    pub params: FamilyParams,
    pub alphabet: Alphabet,
    /// The window for step families, the whole text for total families.
    pub text: String,
    /// Set for step families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<FamilyStep>,
    /// Steps of a total family the expectation applies to; empty means all.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness_steps: Vec<usize>,
    pub expected_value: usize,
    pub expectation: Expectation,
    /// Bound the family is meant to attain, for step families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_id: Option<BoundId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_sets: Option<ExpectedSets>,
}

/// Outcome of measuring an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub family_id: FamilyId,
    pub expected_value: usize,
    pub expectation: Expectation,
    /// One value for a step family; one per slide step for a total family.
    pub measured: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_value: Option<i64>,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

fn invalid(msg: String) -> MawError {
    MawError::InvalidParameter(msg)
}

fn word(symbols: Vec<Symbol>) -> Word {
    Word::new(symbols).expect("family words are non-empty")
}

fn sorted(mut ws: Vec<Word>) -> Vec<Word> {
    ws.sort();
    ws
}

fn repeat(s: Symbol, k: usize) -> Vec<Symbol> {
    vec![s; k]
}

fn concat(parts: &[&[Symbol]]) -> Vec<Symbol> {
    parts.concat()
}

/// `Z = a_1 … a_{σw-1} a_{σw}^{d-σw+1}` followed by `α = a_{σw+1}`, with
/// `|Δ| = σw + d + 1` claimed.
///
/// For `σw >= 2` the exact sets are known: deleted `{α}`, Type1 `{αα}`,
/// Type2 `{α a_t}` for every window symbol, Type3 `{a_t α : t < σw}` plus
/// `{a_{σw-1} a_{σw}^l α : 1 <= l <= d-σw}`. A unary window (`σw = 1`,
/// `d >= 2`) only reaches 3.
pub fn gen_z(d: usize, sigma_w: usize, sigma_total: usize) -> Result<FamilyInstance> {
    if !(1..=d).contains(&sigma_w) || sigma_w + 1 > sigma_total || sigma_total < 3 {
        return Err(invalid(format!(
            "ZGeneral needs 1 <= sigma_w <= d, sigma_w + 1 <= sigma and sigma >= 3 (d={d}, sigma_w={sigma_w}, sigma={sigma_total})"
        )));
    }
    let alphabet = Alphabet::letters(sigma_total)?;
    let a = alphabet.symbols();
    let alpha = a[sigma_w];
    let z = concat(&[&a[..sigma_w - 1], &repeat(a[sigma_w - 1], d - sigma_w + 1)]);
    let expected_sets = (sigma_w >= 2).then(|| {
        let last = a[sigma_w - 1];
        let before = a[sigma_w - 2];
        let mut type3: Vec<Word> = a[..sigma_w - 1].iter().map(|&c| word(vec![c, alpha])).collect();
        type3.extend((1..=d - sigma_w).map(|l| word(concat(&[&[before], &repeat(last, l), &[alpha]]))));
        ExpectedSets {
            deleted: vec![word(vec![alpha])],
            added: TypePartition {
                type1: vec![word(vec![alpha, alpha])],
                type2: sorted(a[..sigma_w].iter().map(|&c| word(vec![alpha, c])).collect()),
                type3: sorted(type3),
            },
        }
    });
    Ok(FamilyInstance {
        family_id: FamilyId::ZGeneral,
        params: FamilyParams { d, sigma_w: Some(sigma_w), sigma: Some(sigma_total), ..Default::default() },
        alphabet,
        text: symbols_to_string(&z),
        step: Some(FamilyStep { window: symbols_to_string(&z), symbol: alpha }),
        witness_steps: Vec::new(),
        expected_value: usize::try_from(bound_general_append(d, sigma_w)).unwrap(),
        expectation: Expectation::Exact,
        bound_id: Some(BoundId::GeneralAppend),
        expected_sets,
    })
}

fn binary_step(
    family_id: FamilyId,
    d: usize,
    window: Vec<Symbol>,
    expected_value: usize,
    bound_id: BoundId,
    expected_sets: ExpectedSets,
) -> FamilyInstance {
    FamilyInstance {
        family_id,
        params: FamilyParams { d, ..Default::default() },
        alphabet: Alphabet::binary(),
        text: symbols_to_string(&window),
        step: Some(FamilyStep { window: symbols_to_string(&window), symbol: b'0' }),
        witness_steps: Vec::new(),
        expected_value,
        expectation: Expectation::Exact,
        bound_id: Some(bound_id),
        expected_sets: Some(expected_sets),
    }
}

/// `S' = 00·1^{d-2}` followed by `0`: `|Δ| = d`, deleted `{10}`, Type2
/// `{100, 101}`, Type3 `{0 1^k 0 : 1 <= k <= d-3}`.
pub fn gen_binary_extremal(d: usize) -> Result<FamilyInstance> {
    if d < 3 {
        return Err(invalid(format!("BinaryExtremal needs d >= 3, got {d}")));
    }
    let window = concat(&[b"00", &repeat(b'1', d - 2)]);
    let type3 = (1..=d - 3).map(|k| word(concat(&[b"0", &repeat(b'1', k), b"0"]))).collect();
    let sets = ExpectedSets {
        deleted: vec![word(b"10".to_vec())],
        added: TypePartition { type1: Vec::new(), type2: sorted(vec![word(b"100".to_vec()), word(b"101".to_vec())]), type3 },
    };
    Ok(binary_step(FamilyId::BinaryExtremal, d, window, usize::try_from(bound_binary_append(d)).unwrap(), BoundId::BinaryAppend, sets))
}

/// `S = 0·1^{d-1}` followed by `0`: `|Δ| = d`, deleted `{10}`, Type2 `{101}`,
/// Type3 `{0 1^k 0 : 1 <= k <= d-2}`.
pub fn gen_binary_onezeros(d: usize) -> Result<FamilyInstance> {
    if d < 3 {
        return Err(invalid(format!("BinaryOneZeros needs d >= 3, got {d}")));
    }
    let window = concat(&[b"0", &repeat(b'1', d - 1)]);
    let type3 = (1..=d - 2).map(|k| word(concat(&[b"0", &repeat(b'1', k), b"0"]))).collect();
    let sets = ExpectedSets {
        deleted: vec![word(b"10".to_vec())],
        added: TypePartition { type1: Vec::new(), type2: vec![word(b"101".to_vec())], type3 },
    };
    Ok(binary_step(FamilyId::BinaryOneZeros, d, window, d, BoundId::BinaryAppend, sets))
}

/// `V = 1^d` followed by `0`: `|Δ| = 3` for every `d`.
pub fn gen_unary_v(d: usize) -> Result<FamilyInstance> {
    if d == 0 {
        return Err(invalid("UnaryV needs d >= 1".into()));
    }
    let sets = ExpectedSets {
        deleted: vec![word(b"0".to_vec())],
        added: TypePartition { type1: vec![word(b"00".to_vec())], type2: vec![word(b"01".to_vec())], type3: Vec::new() },
    };
    let bound = if d >= 3 { BoundId::BinaryAppend } else { BoundId::BinarySmallD };
    Ok(binary_step(FamilyId::UnaryV, d, repeat(b'1', d), 3, bound, sets))
}

/// The `k` with `(k-1)(σ-1) <= d < k(σ-1)`.
pub fn total_sigma_k(d: usize, sigma: usize) -> usize {
    (1..).find(|k| d < k * (sigma - 1)).expect("k exists")
}

/// `T' = U^e · U[..m]` with `U = a_1 α^{k-1} a_2 α^{k-1} … a_{σ-1} α^{k-1}`.
///
/// Symbols are the first `σ` letters with `α = a`, so `a_1, a_2, …` are
/// `b, c, …`. Witness steps are the steps whose incoming symbol is not `α`;
/// each changes at least `⌊(σ-1)/2⌋ · k` MAWs. The first one is the step the
/// size-16 example (`σ = 4`, `d = 9`) refers to.
pub fn gen_total_sigma(n: usize, d: usize, sigma: usize) -> Result<FamilyInstance> {
    if sigma < 3 || sigma > d || d >= n {
        return Err(invalid(format!("TotalSigmaFamily needs 3 <= sigma <= d < n (n={n}, d={d}, sigma={sigma})")));
    }
    let alphabet = Alphabet::letters(sigma)?;
    let alpha = alphabet.symbols()[0];
    let k = total_sigma_k(d, sigma);
    let period = k * (sigma - 1);
    let u: Vec<Symbol> = alphabet.symbols()[1..]
        .iter()
        .flat_map(|&c| std::iter::once(c).chain(std::iter::repeat_n(alpha, k - 1)))
        .collect();
    let text: Vec<Symbol> = u.iter().copied().cycle().take(n).collect();
    let witness_steps: Vec<usize> = (0..n - d).filter(|&i| text[i + d] != alpha).collect();
    if witness_steps.is_empty() {
        return Err(invalid(format!("TotalSigmaFamily with n={n}, d={d} has no step bringing in a non-α symbol")));
    }
    Ok(FamilyInstance {
        family_id: FamilyId::TotalSigmaFamily,
        params: FamilyParams {
            d,
            n: Some(n),
            sigma: Some(sigma),
            k: Some(k),
            e: Some(n / period),
            m: Some(n % period),
            ..Default::default()
        },
        alphabet,
        text: symbols_to_string(&text),
        step: None,
        witness_steps,
        expected_value: (sigma - 1) / 2 * k,
        expectation: Expectation::AtLeast,
        bound_id: None,
        expected_sets: None,
    })
}

/// `(a_1 … a_{d+1})^e a_1 … a_r` of length `n`, every window all-distinct,
/// with `4d - 2` changes per step claimed.
pub fn gen_total_distinct(n: usize, d: usize, sigma: usize) -> Result<FamilyInstance> {
    if d == 0 || sigma < d + 1 || d >= n {
        return Err(invalid(format!("TotalDistinctFamily needs 1 <= d < n and sigma >= d + 1 (n={n}, d={d}, sigma={sigma})")));
    }
    let alphabet = Alphabet::letters(sigma)?;
    let text: Vec<Symbol> = alphabet.symbols()[..=d].iter().copied().cycle().take(n).collect();
    Ok(FamilyInstance {
        family_id: FamilyId::TotalDistinctFamily,
        params: FamilyParams { d, n: Some(n), sigma: Some(sigma), e: Some(n / (d + 1)), m: Some(n % (d + 1)), ..Default::default() },
        alphabet,
        text: symbols_to_string(&text),
        step: None,
        witness_steps: Vec::new(),
        expected_value: 4 * d - 2,
        expectation: Expectation::Exact,
        bound_id: None,
        expected_sets: None,
    })
}

/// `(ab)^{n/2}`: for even `d` every step swaps `(ab)^{d/2}` and `(ba)^{d/2}`.
/// Odd `d` is only recorded.
pub fn gen_alternating(n: usize, d: usize) -> Result<FamilyInstance> {
    if !n.is_multiple_of(2) || d == 0 || d >= n {
        return Err(invalid(format!("AlternatingBinary needs even n and 1 <= d < n (n={n}, d={d})")));
    }
    let alphabet = Alphabet::parse("ab")?;
    Ok(FamilyInstance {
        family_id: FamilyId::AlternatingBinary,
        params: FamilyParams { d, n: Some(n), ..Default::default() },
        alphabet,
        text: "ab".repeat(n / 2),
        step: None,
        witness_steps: Vec::new(),
        expected_value: 2,
        expectation: if d.is_multiple_of(2) { Expectation::Exact } else { Expectation::Recorded },
        bound_id: None,
        expected_sets: None,
    })
}

impl FamilyInstance {
    pub fn symbols(&self) -> Vec<Symbol> {
        self.text.chars().map(|c| u8::try_from(u32::from(c)).expect("family symbols are bytes")).collect()
    }

    pub fn is_step_family(&self) -> bool {
        self.step.is_some()
    }

    fn compare(&self, value: usize) -> bool {
        match self.expectation {
            Expectation::Exact => value == self.expected_value,
            Expectation::AtLeast => value >= self.expected_value,
            Expectation::Recorded => true,
        }
    }

    /// Measures the instance and compares it with its expectation.
    pub fn check(&self, engine: Engine) -> Result<FamilyCheck> {
        let data = self.symbols();
        let mut mismatches = Vec::new();
        let (measured, bound_value) = match &self.step {
            Some(step) => {
                let report = append_delta(Window::whole(&data)?, step.symbol, &self.alphabet, engine)?;
                let delta = report.delta();
                if !self.compare(delta) {
                    mismatches.push(format!("step {}+{}: measured {delta}, expected {}", step.window, char::from(step.symbol), self.expected_value));
                }
                if let Some(sets) = &self.expected_sets {
                    if report.deleted != sets.deleted {
                        mismatches.push(format!("deleted {:?}, expected {:?}", report.deleted, sets.deleted));
                    }
                    if report.by_type != sets.added {
                        mismatches.push(format!("added {:?}, expected {:?}", report.by_type, sets.added));
                    }
                }
                let bound_value = self.bound_id.and_then(|id| {
                    crate::bounds::check_step(&report, self.alphabet.size())
                        .into_iter()
                        .find(|v| v.bound_id == id)
                        .map(|v| v.bound_value)
                });
                (vec![delta], bound_value)
            }
            None => {
                let text = Text::new(data, &self.alphabet)?;
                let summary = slide_totals(&text, self.params.d, &self.alphabet, engine)?;
                let steps: Vec<usize> = if self.witness_steps.is_empty() {
                    (0..summary.per_step.len()).collect()
                } else {
                    self.witness_steps.clone()
                };
                for &i in &steps {
                    if !self.compare(summary.per_step[i]) {
                        mismatches.push(format!("step {i}: measured {}, expected {}", summary.per_step[i], self.expected_value));
                    }
                }
                (summary.per_step, None)
            }
        };
        Ok(FamilyCheck {
            family_id: self.family_id,
            expected_value: self.expected_value,
            expectation: self.expectation,
            matches: mismatches.is_empty(),
            measured,
            bound_value,
            mismatches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        sorted(list.iter().map(|s| Word::parse(s).unwrap()).collect())
    }

    #[test]
    fn z_example() {
        let f = gen_z(6, 4, 5).unwrap();
        assert_eq!(f.text, "abcddd");
        assert_eq!(f.step.as_ref().unwrap().symbol, b'e');
        assert_eq!(f.expected_value, 11);
        let sets = f.expected_sets.as_ref().unwrap();
        assert_eq!(sets.deleted, words(&["e"]));
        assert_eq!(sets.added.type1, words(&["ee"]));
        assert_eq!(sets.added.type2, words(&["ea", "eb", "ec", "ed"]));
        assert_eq!(sets.added.type3, words(&["ae", "be", "ce", "cde", "cdde"]));
        let c = f.check(Engine::Oracle).unwrap();
        assert!(c.matches, "{:?}", c.mismatches);
        assert_eq!(c.bound_value, Some(11));
    }

    #[test]
    fn z_small_cases() {
        let f = gen_z(1, 1, 3).unwrap();
        assert_eq!((f.text.as_str(), f.step.as_ref().unwrap().symbol), ("a", b'b'));
        assert_eq!(f.check(Engine::Automaton).unwrap().measured, [3]);
        let f = gen_z(4, 4, 5).unwrap();
        assert_eq!(f.text, "abcd");
        assert!(f.check(Engine::Automaton).unwrap().matches);
        assert!(gen_z(2, 3, 5).is_err());
        assert!(gen_z(3, 2, 2).is_err());
    }

    #[test]
    fn z_unary_window_falls_short() {
        // a^d + b only deletes b and adds ba, bb
        for d in 2..8 {
            let c = gen_z(d, 1, 3).unwrap().check(Engine::Automaton).unwrap();
            assert_eq!(c.measured, [3]);
            assert!(!c.matches);
        }
    }

    #[test]
    fn binary_families() {
        let f = gen_binary_extremal(5).unwrap();
        assert_eq!(f.text, "00111");
        assert_eq!(f.expected_sets.as_ref().unwrap().added.type3, words(&["010", "0110"]));
        assert!(f.check(Engine::Oracle).unwrap().matches);
        let f = gen_binary_extremal(3).unwrap();
        assert!(f.expected_sets.as_ref().unwrap().added.type3.is_empty());
        assert_eq!(f.check(Engine::Oracle).unwrap().measured, [3]);
        assert!(gen_binary_extremal(2).is_err());

        let f = gen_binary_onezeros(4).unwrap();
        assert_eq!(f.text, "0111");
        let c = f.check(Engine::Oracle).unwrap();
        assert!(c.matches, "{:?}", c.mismatches);
        assert_eq!(c.measured, [4]);
        assert!(gen_binary_onezeros(3).unwrap().check(Engine::Oracle).unwrap().matches);

        for d in 1..10 {
            assert!(gen_unary_v(d).unwrap().check(Engine::Automaton).unwrap().matches);
        }
    }

    #[test]
    fn total_sigma_construction() {
        assert_eq!(total_sigma_k(9, 4), 4);
        assert_eq!(total_sigma_k(4, 3), 3);
        let f = gen_total_sigma(18, 4, 3).unwrap();
        assert_eq!(&f.text[..6], "baacaa");
        let f = gen_total_sigma(40, 9, 4).unwrap();
        assert_eq!(&f.text[..12], "baaacaaadaaa");
        assert_eq!(f.witness_steps[0], 3);
        assert_eq!(f.expected_value, 4);
        // every non-α symbol reappears only after more than d positions
        let t = f.symbols();
        for (i, &c) in t.iter().enumerate().filter(|(_, &c)| c != b'a') {
            assert!(t[i + 1..].iter().take(9).all(|&x| x != c));
        }
        let c = f.check(Engine::Automaton).unwrap();
        assert!(c.matches);
        assert_eq!(c.measured[3], 16);
        assert!(gen_total_sigma(20, 2, 3).is_err());
    }

    #[test]
    fn total_distinct_measured() {
        let f = gen_total_distinct(12, 2, 3).unwrap();
        assert_eq!(f.text, "abcabcabcabc");
        assert_eq!(f.check(Engine::Automaton).unwrap().measured, vec![6; 10]);
        assert!(gen_total_distinct(30, 3, 4).unwrap().check(Engine::Automaton).unwrap().matches);
        // d = 1: MAW(a) and MAW(b) are disjoint, 4 changes rather than 2
        let c = gen_total_distinct(6, 1, 2).unwrap().check(Engine::Automaton).unwrap();
        assert_eq!(c.measured, vec![4; 5]);
        assert!(!c.matches);
    }

    #[test]
    fn alternating() {
        let f = gen_alternating(20, 6).unwrap();
        assert!(f.check(Engine::Automaton).unwrap().matches);
        let c = gen_alternating(20, 5).unwrap().check(Engine::Automaton).unwrap();
        assert_eq!(c.expectation, Expectation::Recorded);
        assert_eq!(c.measured, vec![2; 15]);
        assert!(gen_alternating(7, 2).is_err());
    }

    #[test]
    fn ids_parse() {
        for id in FamilyId::ALL {
            assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
        }
        assert_eq!("TotalDistinct".parse::<FamilyId>().unwrap(), FamilyId::TotalDistinctFamily);
        assert!("Nope".parse::<FamilyId>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = gen_z(6, 4, 5).unwrap();
        let back: FamilyInstance = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
