//! Exhaustive, randomized and family-driven verification campaigns.
//!
//! One instance is a window `S` and a symbol `α`. Each instance runs the
//! append step `S → Sα` and the delete step `αS → S`, checks every applicable
//! bound and every structural property of the step, and optionally compares
//! the two MAW engines. Instances are evaluated in parallel chunks and folded
//! in input order, so a report depends only on its configuration.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{check_step, BoundId, BoundVerdict};
use crate::engine::Engine;
use crate::error::{MawError, Result};
use crate::families::{gen_binary_extremal, gen_unary_v, gen_z, FamilyId, FamilyInstance, FamilyParams};
use crate::model::{reversed, symbols_to_string, Alphabet, Symbol, Word};
use crate::oracle::MawSet;
use crate::slide::{analyze_append, mirror_into_delete, step_witness, DeltaReport, Direction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CampaignMode {
    Exhaustive,
    Random,
    Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    Oracle,
    #[default]
    Automaton,
    Both,
}

impl EngineChoice {
    fn primary(self) -> Engine {
        match self {
            EngineChoice::Oracle => Engine::Oracle,
            EngineChoice::Automaton | EngineChoice::Both => Engine::Automaton,
        }
    }
}

pub const DEFAULT_BUDGET: u128 = 10_000_000;

fn default_budget() -> u128 {
    DEFAULT_BUDGET
}

fn default_true() -> bool {
    true
}

/// A campaign description; also the JSON config format of `verify --config`.
///
/// `sigmas` lists alphabet sizes (the alphabet of size `σ` is `0…9` for
/// `σ <= 10`, letters beyond). `min_len..=max_len` is the range of window
/// lengths `d` (exhaustive, random) or the `d` range of a tightness scan
/// (family mode, where `sigmas` are extended-window sizes `σ′`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub mode: CampaignMode,
    pub sigmas: Vec<usize>,
    pub min_len: usize,
    pub max_len: usize,
    #[serde(default)]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub engine: EngineChoice,
    #[serde(default = "default_budget")]
    pub budget: u128,
    /// Also run and check the delete step `αS → S` of every instance.
    #[serde(default = "default_true")]
    pub check_delete: bool,
    /// Subtracted from every bound before comparing; non-zero only to test
    /// that violations are caught.
    #[serde(default)]
    pub bound_offset: i64,
}

impl CampaignConfig {
    pub fn exhaustive(sigmas: Vec<usize>, min_len: usize, max_len: usize) -> Self {
        Self {
            mode: CampaignMode::Exhaustive,
            sigmas,
            min_len,
            max_len,
            samples: 0,
            seed: 0,
            engine: EngineChoice::Both,
            budget: DEFAULT_BUDGET,
            check_delete: true,
            bound_offset: 0,
        }
    }

    pub fn random(sigmas: Vec<usize>, min_len: usize, max_len: usize, samples: usize, seed: u64) -> Self {
        Self { mode: CampaignMode::Random, samples, seed, ..Self::exhaustive(sigmas, min_len, max_len) }
    }

    pub fn family(sigmas: Vec<usize>, min_len: usize, max_len: usize) -> Self {
        Self { mode: CampaignMode::Family, engine: EngineChoice::Automaton, ..Self::exhaustive(sigmas, min_len, max_len) }
    }

    /// Named presets: `exhaustive-binary`, `exhaustive-ternary`, `random`,
    /// `tightness`.
    pub fn preset(name: &str, seed: u64) -> Result<Self> {
        match name {
            "exhaustive-binary" => Ok(Self::exhaustive(vec![2], 1, 14)),
            "exhaustive-ternary" => Ok(Self::exhaustive(vec![3], 1, 9)),
            "random" => Ok(Self::random(vec![2, 4, 26], 1, 200, 10_000, seed)),
            "tightness" => Ok(Self::family(vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13], 1, 12)),
            other => Err(MawError::InvalidParameter(format!("unknown preset {other:?}"))),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sigmas.is_empty() || self.sigmas.contains(&0) {
            return Err(MawError::InvalidParameter("sigmas must be a non-empty list of positive sizes".into()));
        }
        if self.min_len == 0 || self.min_len > self.max_len {
            return Err(MawError::InvalidParameter(format!(
                "length range must satisfy 1 <= min_len <= max_len, got {}..={}",
                self.min_len, self.max_len
            )));
        }
        Ok(())
    }

    /// Number of (window, symbol) instances an exhaustive run evaluates.
    pub fn exhaustive_estimate(&self) -> u128 {
        self.sigmas
            .iter()
            .map(|&s| {
                let s = s as u128;
                (self.min_len..=self.max_len)
                    .map(|len| s.checked_pow(len as u32).map_or(u128::MAX, |c| c.saturating_mul(s)))
                    .fold(0u128, u128::saturating_add)
            })
            .fold(0u128, u128::saturating_add)
    }
}

/// Alphabet of size `σ` used by campaigns.
pub fn campaign_alphabet(sigma: usize) -> Result<Alphabet> {
    Alphabet::standard(sigma)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundAggregate {
    pub bound_id: BoundId,
    pub checked: u64,
    pub violations: u64,
    pub min_slack: i64,
    pub argmin_witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Falsification {
    pub claim: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineMismatch {
    pub subject: String,
    pub alphabet: Alphabet,
    pub only_oracle: Vec<Word>,
    pub only_automaton: Vec<Word>,
}

/// The largest observed append change for one `(d, σ′)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub d: usize,
    pub sigma_ext: usize,
    pub max_delta: usize,
    pub witness: String,
    /// `max(3, d)` for `σ′ = 2`, `σ′ + d` for `σ′ >= 3`, 2 for `σ′ = 1`.
    pub predicted: usize,
}

impl TightnessRow {
    pub fn attains_prediction(&self) -> bool {
        self.max_delta == self.predicted
    }
}

/// Largest achievable append change with window length `d` and `σ′`
/// distinct symbols in the extended window, when `σ′ - 1 <= d`.
pub fn predicted_max_delta(d: usize, sigma_ext: usize) -> Option<usize> {
    match sigma_ext {
        0 => None,
        1 => Some(2),
        2 => Some(d.max(3)),
        s if s - 1 <= d => Some(s + d),
        _ => None,
    }
}

/// One measured family instance of a tightness scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub family_id: FamilyId,
    pub params: FamilyParams,
    pub window: String,
    pub symbol: String,
    pub sigma_ext: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_id: Option<BoundId>,
    pub bound_value: i64,
    pub expected: usize,
    pub measured: usize,
    pub slack: i64,
    pub matches: bool,
}

/// Cap on how many falsifications and mismatches are kept verbatim.
pub const MAX_LISTED: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub instances: u64,
    pub steps_checked: u64,
    pub bounds: Vec<BoundAggregate>,
    pub falsification_count: u64,
    pub falsifications: Vec<Falsification>,
    pub mismatch_count: u64,
    pub engine_mismatches: Vec<EngineMismatch>,
    pub tightness: Vec<TightnessRow>,
    /// Number of append steps per change size.
    pub histogram: BTreeMap<usize, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyRow>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.falsification_count == 0 && self.mismatch_count == 0
    }

    pub fn bound(&self, id: BoundId) -> Option<&BoundAggregate> {
        self.bounds.iter().find(|b| b.bound_id == id)
    }

    /// Largest observed change per window length, over all `σ′`.
    pub fn max_delta_by_d(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for row in &self.tightness {
            let e = out.entry(row.d).or_insert(0);
            *e = (*e).max(row.max_delta);
        }
        out
    }
}

/// Everything one instance contributes to a report.
#[derive(Debug, Default)]
struct Outcome {
    steps: u64,
    verdicts: Vec<(BoundVerdict, String)>,
    falsifications: Vec<Falsification>,
    mismatches: Vec<EngineMismatch>,
    append: Option<(usize, usize, usize, String)>,
}

/// Order-dependent fold of outcomes; ties keep the earliest witness.
struct Accumulator {
    config: CampaignConfig,
    instances: u64,
    steps: u64,
    bounds: BTreeMap<BoundId, BoundAggregate>,
    falsification_count: u64,
    falsifications: Vec<Falsification>,
    mismatch_count: u64,
    mismatches: Vec<EngineMismatch>,
    tightness: BTreeMap<(usize, usize), (usize, String)>,
    histogram: BTreeMap<usize, u64>,
}

impl Accumulator {
    fn new(config: CampaignConfig) -> Self {
        Self {
            config,
            instances: 0,
            steps: 0,
            bounds: BTreeMap::new(),
            falsification_count: 0,
            falsifications: Vec::new(),
            mismatch_count: 0,
            mismatches: Vec::new(),
            tightness: BTreeMap::new(),
            histogram: BTreeMap::new(),
        }
    }

    fn add(&mut self, o: Outcome) {
        self.instances += 1;
        self.steps += o.steps;
        for (v, witness) in o.verdicts {
            let agg = self.bounds.entry(v.bound_id).or_insert_with(|| BoundAggregate {
                bound_id: v.bound_id,
                checked: 0,
                violations: 0,
                min_slack: i64::MAX,
                argmin_witness: String::new(),
            });
            agg.checked += 1;
            if !v.satisfied {
                agg.violations += 1;
            }
            if v.slack < agg.min_slack {
                agg.min_slack = v.slack;
                agg.argmin_witness = witness;
            }
        }
        self.falsification_count += o.falsifications.len() as u64;
        for f in o.falsifications {
            if self.falsifications.len() < MAX_LISTED {
                self.falsifications.push(f);
            }
        }
        self.mismatch_count += o.mismatches.len() as u64;
        for m in o.mismatches {
            if self.mismatches.len() < MAX_LISTED {
                self.mismatches.push(m);
            }
        }
        if let Some((d, sigma_ext, delta, witness)) = o.append {
            *self.histogram.entry(delta).or_insert(0) += 1;
            let e = self.tightness.entry((d, sigma_ext)).or_insert((0, String::new()));
            if delta > e.0 || e.1.is_empty() {
                *e = (delta, witness);
            }
        }
    }

    fn finish(self, families: Vec<FamilyRow>) -> CampaignReport {
        CampaignReport {
            config: self.config,
            instances: self.instances,
            steps_checked: self.steps,
            bounds: self.bounds.into_values().collect(),
            falsification_count: self.falsification_count,
            falsifications: self.falsifications,
            mismatch_count: self.mismatch_count,
            engine_mismatches: self.mismatches,
            tightness: self
                .tightness
                .into_iter()
                .map(|((d, sigma_ext), (max_delta, witness))| TightnessRow {
                    d,
                    sigma_ext,
                    max_delta,
                    witness,
                    predicted: predicted_max_delta(d, sigma_ext).unwrap_or(0),
                })
                .collect(),
            histogram: self.histogram,
            families,
        }
    }
}

fn falsified(claim: impl Into<String>, witness: &str) -> Falsification {
    Falsification { claim: claim.into(), witness: witness.to_string() }
}

fn count_of(s: &[Symbol], c: Symbol) -> usize {
    s.iter().filter(|&&x| x == c).count()
}

/// Structural properties of an append step beyond the numeric caps.
fn structural_checks(r: &DeltaReport, pre: &[Symbol], witness: &str, out: &mut Vec<Falsification>) {
    let alpha = r.symbol;
    if r.by_type.total() != r.added.len() {
        out.push(falsified("the type partition covers the added set", witness));
    }
    if let Some(w) = r.by_type.type1.iter().find(|w| w.as_slice().iter().any(|&c| c != alpha)) {
        out.push(falsified(format!("the Type-1 MAW {w} is a power of the appended symbol"), witness));
    }
    let mut lasts: Vec<Symbol> = r.by_type.type2.iter().map(Word::last).collect();
    lasts.sort_unstable();
    if lasts.windows(2).any(|p| p[0] == p[1]) {
        out.push(falsified("Type-2 MAWs have distinct last symbols", witness));
    }
    let d = r.d;
    if r.sigma_ext == 2 && d >= 3 && r.symbol_occurs {
        let other = pre.iter().copied().find(|&c| c != alpha).expect("binary window has another symbol");
        if r.by_type.type2.len() > count_of(&pre[..d - 1], alpha) {
            out.push(falsified("|M2| is at most the count of the appended symbol in S[0..d-2]", witness));
        }
        if r.by_type.type3.len() > count_of(&pre[2..], other) {
            out.push(falsified("|M3| is at most the count of the other symbol in S[2..d-1]", witness));
        }
    }
}

fn engine_mismatch(subject: &[Symbol], alphabet: &Alphabet, oracle: &MawSet, fast: &MawSet) -> Option<EngineMismatch> {
    (oracle != fast).then(|| EngineMismatch {
        subject: symbols_to_string(subject),
        alphabet: alphabet.clone(),
        only_oracle: oracle.difference(fast),
        only_automaton: fast.difference(oracle),
    })
}

/// MAW sets from the primary engine, cross-checked against the oracle when
/// both engines are requested and `cross_check` is set.
fn maws(subject: &[Symbol], alphabet: &Alphabet, engine: EngineChoice, cross_check: bool, out: &mut Outcome) -> Result<MawSet> {
    let set = engine.primary().maws(subject, alphabet)?;
    if engine == EngineChoice::Both && cross_check {
        let oracle = Engine::Oracle.maws(subject, alphabet)?;
        out.mismatches.extend(engine_mismatch(subject, alphabet, &oracle, &set));
    }
    Ok(set)
}

fn record_verdicts(out: &mut Outcome, verdicts: Vec<BoundVerdict>, offset: i64, witness: &str) {
    for v in verdicts {
        let v = v.shifted(offset);
        if !v.satisfied {
            out.falsifications.push(falsified(
                format!("{} holds: observed {} > bound {}", v.bound_id, v.observed, v.bound_value),
                witness,
            ));
        }
        out.verdicts.push((v, witness.to_string()));
    }
}

fn error_falsification(e: MawError, witness: &str) -> Falsification {
    match e {
        MawError::Falsified { claim, witness } => Falsification { claim, witness },
        other => falsified(other.to_string(), witness),
    }
}

/// Runs every check for the instance `(S, α)`.
fn check_instance(pre: &[Symbol], alpha: Symbol, alphabet: &Alphabet, config: &CampaignConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let sigma = alphabet.size();
    let mut extended = pre.to_vec();
    extended.push(alpha);

    let before = maws(pre, alphabet, config.engine, true, &mut out)?;
    let after = maws(&extended, alphabet, config.engine, true, &mut out)?;
    let witness = step_witness(Direction::Append, pre, alpha);
    out.steps += 1;
    match analyze_append(pre, 0, None, alpha, &before, &after) {
        Ok(report) => {
            structural_checks(&report, pre, &witness, &mut out.falsifications);
            record_verdicts(&mut out, check_step(&report, sigma), config.bound_offset, &witness);
            out.append = Some((report.d, report.sigma_ext, report.delta(), witness));
        }
        Err(e) => out.falsifications.push(error_falsification(e, &witness)),
    }

    if config.check_delete {
        // αS → S, measured directly and through the reversal reduction
        let mut full = vec![alpha];
        full.extend_from_slice(pre);
        let witness = step_witness(Direction::Delete, pre, alpha);
        out.steps += 1;
        // oracle cross-check of αS only in random mode
        let big = maws(&full, alphabet, config.engine, config.mode == CampaignMode::Random, &mut out)?;
        let rev_pre = reversed(pre);
        let rev_before = maws(&rev_pre, alphabet, config.engine, false, &mut out)?;
        let rev_after = maws(&reversed(&full), alphabet, config.engine, false, &mut out)?;
        match analyze_append(&rev_pre, 0, None, alpha, &rev_before, &rev_after) {
            Ok(rev) => {
                let report = mirror_into_delete(rev, 0, &full, None);
                if report.deleted != big.difference(&before) || report.added != before.difference(&big) {
                    out.falsifications.push(falsified("the delete step is the reversal image of an append", &witness));
                }
                if report.added.len() != 1 {
                    out.falsifications.push(falsified("exactly one MAW is added on delete", &witness));
                }
                record_verdicts(&mut out, check_step(&report, sigma), config.bound_offset, &witness);
            }
            Err(e) => out.falsifications.push(error_falsification(e, &witness)),
        }
    }
    Ok(out)
}

const CHUNK: usize = 4096;

/// Evaluates `instances` in parallel chunks and folds them in order.
fn run_instances<I>(config: &CampaignConfig, instances: I) -> Result<Accumulator>
where
    I: Iterator<Item = (Vec<Symbol>, Symbol, Alphabet)>,
{
    let mut acc = Accumulator::new(config.clone());
    let mut instances = instances.peekable();
    while instances.peek().is_some() {
        let chunk: Vec<_> = instances.by_ref().take(CHUNK).collect();
        let outcomes: Vec<Outcome> = chunk
            .par_iter()
            .map(|(s, a, sigma)| check_instance(s, *a, sigma, config))
            .collect::<Result<_>>()?;
        outcomes.into_iter().for_each(|o| acc.add(o));
    }
    Ok(acc)
}

/// All strings of length `len` over `symbols`, in lexicographic order.
fn all_strings(symbols: &[Symbol], len: usize) -> impl Iterator<Item = Vec<Symbol>> + '_ {
    let sigma = symbols.len();
    let total = sigma.checked_pow(len as u32).expect("exhaustive range fits in usize");
    (0..total).map(move |mut code| {
        let mut s = vec![symbols[0]; len];
        for slot in s.iter_mut().rev() {
            *slot = symbols[code % sigma];
            code /= sigma;
        }
        s
    })
}

/// Checks every `(S, α)` with `S` over each configured alphabet and
/// `min_len <= |S| <= max_len`.
pub fn run_exhaustive(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let estimate = config.exhaustive_estimate();
    if estimate > config.budget {
        return Err(MawError::BudgetExceeded { estimate, budget: config.budget });
    }
    let alphabets: Vec<Alphabet> = config.sigmas.iter().map(|&s| campaign_alphabet(s)).collect::<Result<_>>()?;
    let instances = alphabets.iter().flat_map(|sigma| {
        (config.min_len..=config.max_len).flat_map(move |len| {
            all_strings(sigma.symbols(), len)
                .flat_map(move |s| sigma.symbols().iter().map(move |&a| (s.clone(), a, sigma.clone())))
        })
    });
    Ok(run_instances(config, instances)?.finish(Vec::new()))
}

/// The `index`-th random instance; depends only on the seed and the index.
fn random_instance(config: &CampaignConfig, alphabets: &[Alphabet], index: usize) -> (Vec<Symbol>, Symbol, Alphabet) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let sigma = &alphabets[rng.gen_range(0..alphabets.len())];
    let len = rng.gen_range(config.min_len..=config.max_len);
    let symbols = sigma.symbols();
    let s = (0..len).map(|_| symbols[rng.gen_range(0..symbols.len())]).collect();
    let alpha = symbols[rng.gen_range(0..symbols.len())];
    (s, alpha, sigma.clone())
}

/// Checks `samples` seeded uniform random instances.
pub fn run_random(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let alphabets: Vec<Alphabet> = config.sigmas.iter().map(|&s| campaign_alphabet(s)).collect::<Result<_>>()?;
    let instances = (0..config.samples).map(|i| random_instance(config, &alphabets, i));
    Ok(run_instances(config, instances)?.finish(Vec::new()))
}

/// The step instance the scan uses for `(d, σ′)`, if there is one.
fn scan_instance(d: usize, sigma_ext: usize) -> Result<Option<FamilyInstance>> {
    Ok(match sigma_ext {
        1 => None,
        2 if d >= 3 => Some(gen_binary_extremal(d)?),
        2 => Some(gen_unary_v(d)?),
        s if s - 1 <= d => Some(gen_z(d, s - 1, s.max(3))?),
        _ => None,
    })
}

/// Builds the tightness family for every `(d, σ′)` in range, measures it and
/// checks that it attains its bound with slack 0. Unary steps (`σ′ = 1`) use
/// `0^d + 0`, which changes exactly 2 words.
pub fn tightness_scan(d_range: std::ops::RangeInclusive<usize>, sigma_range: &[usize], engine: Engine) -> Result<CampaignReport> {
    let config = CampaignConfig::family(sigma_range.to_vec(), *d_range.start(), *d_range.end());
    config.validate()?;
    let cells: Vec<(usize, usize)> =
        d_range.flat_map(|d| sigma_range.iter().map(move |&s| (d, s))).collect();
    let rows: Vec<Option<(FamilyRow, DeltaReport, Vec<BoundVerdict>)>> = cells
        .par_iter()
        .map(|&(d, s)| -> Result<_> {
            let (pre, symbol, alphabet, family_id, params, bound_id, expected) = match scan_instance(d, s)? {
                Some(f) => {
                    let symbol = f.step.as_ref().expect("scan families are step families").symbol;
                    (f.symbols(), symbol, f.alphabet, f.family_id, f.params, f.bound_id, f.expected_value)
                }
                None if s == 1 => {
                    (vec![b'0'; d], b'0', Alphabet::binary(), FamilyId::UnaryV, FamilyParams { d, ..Default::default() }, None, 2)
                }
                None => return Ok(None),
            };
            let mut extended = pre.clone();
            extended.push(symbol);
            let before = engine.maws(&pre, &alphabet)?;
            let after = engine.maws(&extended, &alphabet)?;
            let report = analyze_append(&pre, 0, None, symbol, &before, &after)?;
            let verdicts = check_step(&report, alphabet.size());
            let measured = report.delta();
            let bound_value = bound_id
                .and_then(|id| verdicts.iter().find(|v| v.bound_id == id))
                .map_or(expected as i64, |v| v.bound_value);
            let row = FamilyRow {
                family_id,
                params,
                window: symbols_to_string(&pre),
                symbol: symbols_to_string(&[symbol]),
                sigma_ext: report.sigma_ext,
                bound_id,
                bound_value,
                expected,
                measured,
                slack: bound_value - measured as i64,
                matches: measured == expected && bound_value == measured as i64,
            };
            Ok(Some((row, report, verdicts)))
        })
        .collect::<Result<_>>()?;

    let mut acc = Accumulator::new(config);
    let mut families = Vec::new();
    for (row, report, verdicts) in rows.into_iter().flatten() {
        let witness = report.witness();
        let mut o = Outcome { steps: 1, ..Default::default() };
        record_verdicts(&mut o, verdicts, 0, &witness);
        if !row.matches {
            o.falsifications.push(falsified(
                format!("{} attains {} with slack 0 (measured {}, bound {})", row.family_id, row.expected, row.measured, row.bound_value),
                &witness,
            ));
        }
        o.append = Some((report.d, report.sigma_ext, report.delta(), witness));
        acc.add(o);
        families.push(row);
    }
    Ok(acc.finish(families))
}

/// Dispatches on the configured mode.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    match config.mode {
        CampaignMode::Exhaustive => run_exhaustive(config),
        CampaignMode::Random => run_random(config),
        CampaignMode::Family => {
            let mut report = tightness_scan(config.min_len..=config.max_len, &config.sigmas, config.engine.primary())?;
            report.config = config.clone();
            Ok(report)
        }
    }
}

/// Sizes the global worker pool from `MAWLAB_THREADS`, once. Later calls and
/// an unset or invalid variable leave the default pool alone.
pub fn init_thread_pool() {
    static INIT: OnceLock<()> = OnceLock::new();
    INIT.get_or_init(|| {
        if let Some(n) = std::env::var("MAWLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    });
}
