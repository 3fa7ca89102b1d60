//! Machine-readable reports: a JSON envelope around every result, CSV tables
//! for plotting, and a plain-text rendering.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundId, BoundVerdict, TightnessRatio};
use crate::error::{MawError, Result};
use crate::families::{FamilyCheck, FamilyInstance};
use crate::model::Alphabet;
use crate::oracle::MawSet;
use crate::slide::{DeltaReport, SlideStep, SlideSummary};
use crate::verify::CampaignReport;

pub const TOOL: &str = "mawlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timestamps {
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub wall_clock_seconds: f64,
}

impl Timestamps {
    pub fn since(started: SystemTime) -> Self {
        let finished = SystemTime::now();
        let ms = |t: SystemTime| t.duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis());
        Self {
            started_unix_ms: ms(started),
            finished_unix_ms: ms(finished),
            wall_clock_seconds: finished.duration_since(started).map_or(0.0, |d| d.as_secs_f64()),
        }
    }
}

/// Result of `slide`: the summary, its total verdicts and, on request, every
/// step in detail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideReport {
    pub text: String,
    pub summary: SlideSummary,
    pub verdicts: Vec<BoundVerdict>,
    pub tightness_ratio: TightnessRatio,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<SlideStep>>,
}

impl SlideReport {
    /// Whether every total verdict and every per-step verdict holds.
    pub fn satisfied(&self) -> bool {
        self.verdicts.iter().all(|v| v.satisfied)
            && self.steps.iter().flatten().all(|s| {
                s.append.bound_verdicts.iter().chain(&s.delete.bound_verdicts).all(|v| v.satisfied)
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub instance: FamilyInstance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<FamilyCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    MawSet(MawSet),
    Delta(DeltaReport),
    Slide(SlideReport),
    Campaign(CampaignReport),
    Family(FamilyReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Alphabet>,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamps: Option<Timestamps>,
}

impl ReportEnvelope {
    pub fn new(command: Vec<String>, alphabet: Option<Alphabet>, payload: Payload) -> Self {
        Self { tool: TOOL.into(), version: VERSION.into(), command, alphabet, payload, timestamps: None }
    }

    pub fn with_timestamps(mut self, timestamps: Timestamps) -> Self {
        self.timestamps = Some(timestamps);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| MawError::Consistency(format!("cannot serialize report: {e}")))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| MawError::InvalidParameter(format!("malformed report: {e}")))
    }
}

fn csv_error(e: impl std::fmt::Display) -> MawError {
    MawError::Consistency(format!("csv: {e}"))
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(out)
}

/// `length,word`, one row per MAW in canonical order.
pub fn write_maw_csv<W: Write>(set: &MawSet, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["length", "word"]).map_err(csv_error)?;
    for word in set {
        w.write_record([word.len().to_string(), word.to_string()]).map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)
}

/// Reads the words back from [`write_maw_csv`] output.
pub fn read_maw_csv(data: &str) -> Result<Vec<(usize, String)>> {
    let mut r = csv::Reader::from_reader(data.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            let len = rec[0].parse().map_err(csv_error)?;
            Ok((len, rec[1].to_string()))
        })
        .collect()
}

/// Header of the per-step slide table.
pub fn slide_csv_header() -> Vec<String> {
    let mut h: Vec<String> =
        ["step_index", "d", "sigma_window", "sigma_ext", "deleted", "m1", "m2", "m3", "delta"].map(String::from).to_vec();
    h.extend(BoundId::per_step().map(|b| b.as_str().to_string()));
    h.push("append_delta".into());
    h.push("delete_delta".into());
    h
}

/// One row per slide step. `deleted`, `m1`–`m3`, `sigma_ext` describe the
/// append half; `delta` is the whole step. Slack columns of bounds that do
/// not apply to the step are empty.
pub fn slide_csv_rows(steps: &[SlideStep]) -> Vec<Vec<String>> {
    steps
        .iter()
        .map(|s| {
            let a = &s.append;
            let mut row = vec![
                s.index.to_string(),
                a.d.to_string(),
                a.sigma_window.to_string(),
                a.sigma_ext.to_string(),
                a.deleted.len().to_string(),
                a.by_type.type1.len().to_string(),
                a.by_type.type2.len().to_string(),
                a.by_type.type3.len().to_string(),
                s.delta.to_string(),
            ];
            for id in BoundId::per_step() {
                let v = a.bound_verdicts.iter().chain(&s.delete.bound_verdicts).find(|v| v.bound_id == id);
                row.push(v.map(|v| v.slack.to_string()).unwrap_or_default());
            }
            row.push(a.delta().to_string());
            row.push(s.delete.delta().to_string());
            row
        })
        .collect()
}

pub fn write_slide_csv<W: Write>(steps: &[SlideStep], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(slide_csv_header()).map_err(csv_error)?;
    for row in slide_csv_rows(steps) {
        w.write_record(row).map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)
}

/// `step_index,delta`, for slides without per-step detail.
pub fn write_summary_csv<W: Write>(summary: &SlideSummary, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["step_index", "delta"]).map_err(csv_error)?;
    for (i, delta) in summary.per_step.iter().enumerate() {
        w.write_record([i.to_string(), delta.to_string()]).map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)
}

/// Reads any table written here into its header and rows.
pub fn read_csv_table(data: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut r = csv::Reader::from_reader(data.as_bytes());
    let header = r.headers().map_err(csv_error)?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()).map_err(csv_error))
        .collect::<Result<_>>()?;
    Ok((header, rows))
}

/// Two tables: bound aggregates (`bound_id,checked,violations,min_slack,argmin_witness`)
/// and the tightness table (`d,sigma_ext,max_delta,predicted,witness`),
/// separated by a blank line.
pub fn write_campaign_csv<W: Write>(report: &CampaignReport, mut out: W) -> Result<()> {
    {
        let mut w = csv_writer(&mut out);
        w.write_record(["bound_id", "checked", "violations", "min_slack", "argmin_witness"]).map_err(csv_error)?;
        for b in &report.bounds {
            w.write_record([
                b.bound_id.to_string(),
                b.checked.to_string(),
                b.violations.to_string(),
                b.min_slack.to_string(),
                b.argmin_witness.clone(),
            ])
            .map_err(csv_error)?;
        }
        w.flush().map_err(csv_error)?;
    }
    writeln!(out).map_err(csv_error)?;
    let mut w = csv_writer(out);
    w.write_record(["d", "sigma_ext", "max_delta", "predicted", "witness"]).map_err(csv_error)?;
    for t in &report.tightness {
        w.write_record([
            t.d.to_string(),
            t.sigma_ext.to_string(),
            t.max_delta.to_string(),
            t.predicted.to_string(),
            t.witness.clone(),
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)
}

/// `family_id,text,symbol,expected,expectation,measured,matches`; `measured`
/// and `matches` are empty when the instance was not checked.
pub fn write_family_csv<W: Write>(report: &FamilyReport, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["family_id", "text", "symbol", "expected", "expectation", "measured", "matches"])
        .map_err(csv_error)?;
    let f = &report.instance;
    let symbol = f.step.as_ref().map(|s| char::from(s.symbol).to_string()).unwrap_or_default();
    let expectation = serde_json::to_value(f.expectation).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let (measured, matches) = match &report.check {
        Some(c) => (c.measured.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "), c.matches.to_string()),
        None => (String::new(), String::new()),
    };
    w.write_record([
        f.family_id.to_string(),
        f.text.clone(),
        symbol,
        f.expected_value.to_string(),
        expectation,
        measured,
        matches,
    ])
    .map_err(csv_error)?;
    w.flush().map_err(csv_error)
}

fn join_words<'a>(ws: impl IntoIterator<Item = &'a crate::model::Word>) -> String {
    ws.into_iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

fn render_delta(out: &mut String, r: &DeltaReport) {
    use std::fmt::Write as _;
    let _ = writeln!(out, "{:?} {} -> {}: |delta| = {}", r.direction, r.before.content, r.after.content, r.delta());
    let _ = writeln!(out, "  deleted: {}", join_words(&r.deleted));
    let _ = writeln!(out, "  added:   {}", join_words(&r.added));
    let _ = writeln!(
        out,
        "  M1: {}  M2: {}  M3: {}",
        join_words(&r.by_type.type1),
        join_words(&r.by_type.type2),
        join_words(&r.by_type.type3)
    );
    for v in &r.bound_verdicts {
        let _ = writeln!(out, "  {} <= {} (observed {}, slack {})", v.bound_id, v.bound_value, v.observed, v.slack);
    }
}

/// Human-readable rendering of a payload.
pub fn render_text(payload: &Payload) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    match payload {
        Payload::MawSet(set) => {
            let _ = writeln!(out, "{}", join_words(set));
        }
        Payload::Delta(r) => render_delta(&mut out, r),
        Payload::Slide(s) => {
            let m = &s.summary;
            let _ = writeln!(out, "n = {}, d = {}, S(T,d) = {}", m.n, m.d, m.total);
            let _ = writeln!(out, "per step: {}", m.per_step.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            let _ = writeln!(out, "ratio S/((n-d)min(d,sigma)) = {}", s.tightness_ratio);
            for v in &s.verdicts {
                let _ = writeln!(out, "{} <= {} (slack {})", v.bound_id, v.bound_value, v.slack);
            }
            for step in s.steps.iter().flatten() {
                let _ = writeln!(out, "step {}: {}", step.index, step.delta);
                render_delta(&mut out, &step.append);
                render_delta(&mut out, &step.delete);
            }
        }
        Payload::Campaign(c) => {
            let _ = writeln!(out, "{} instances, {} steps checked", c.instances, c.steps_checked);
            let _ = writeln!(out, "falsifications: {}, engine mismatches: {}", c.falsification_count, c.mismatch_count);
            for b in &c.bounds {
                let _ = writeln!(out, "{:<22} checked {:>9}  min slack {:>4}  at {}", b.bound_id.as_str(), b.checked, b.min_slack, b.argmin_witness);
            }
            for t in &c.tightness {
                let _ = writeln!(out, "d={:<3} sigma'={:<3} max |delta| {:<4} predicted {}", t.d, t.sigma_ext, t.max_delta, t.predicted);
            }
            for f in &c.falsifications {
                let _ = writeln!(out, "FALSIFIED {} at {}", f.claim, f.witness);
            }
            for m in &c.engine_mismatches {
                let _ = writeln!(out, "MISMATCH on {:?}", m.subject);
            }
        }
        Payload::Family(f) => {
            let i = &f.instance;
            let _ = write!(out, "{} {}", i.family_id, i.text);
            if let Some(step) = &i.step {
                let _ = write!(out, " + {}", char::from(step.symbol));
            }
            let _ = writeln!(out, "\nexpected {:?} {}", i.expectation, i.expected_value);
            if let Some(c) = &f.check {
                let _ = writeln!(out, "measured {}", c.measured.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "));
                let _ = writeln!(out, "{}", if c.matches { "match" } else { "MISMATCH" });
                for m in &c.mismatches {
                    let _ = writeln!(out, "  {m}");
                }
            }
        }
    }
    out
}
