//! `mawlab`: minimal absent words, slide analysis and verification campaigns
//! from the command line.
//!
//! Exit status: 0 on success, 2 on a usage or input error, 3 when a bound is
//! violated, a family misses its expected value or the engines disagree.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::SystemTime;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mawlab::bounds::{check_summary, TightnessRatio};
use mawlab::families::{
    gen_alternating, gen_binary_extremal, gen_binary_onezeros, gen_total_distinct, gen_total_sigma, gen_unary_v, gen_z,
    FamilyId, FamilyInstance,
};
use mawlab::report::{
    render_text, write_campaign_csv, write_family_csv, write_maw_csv, write_slide_csv, write_summary_csv, FamilyReport,
    Payload, ReportEnvelope, SlideReport, Timestamps,
};
use mawlab::slide::{slide_steps, slide_totals};
use mawlab::verify::{init_thread_pool, run_campaign, CampaignConfig, EngineChoice};
use mawlab::{check_step, Alphabet, Engine, MawError, Text};

#[derive(Parser)]
#[command(name = "mawlab", version, about = "Minimal absent words under a sliding window")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Leave wall-clock timestamps out of JSON reports.
    #[arg(long, global = true)]
    no_timestamps: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal absent words of a string.
    Maw(MawArgs),
    /// Measure how the MAW set changes as a window slides over a text.
    Slide(SlideArgs),
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Generate an extremal family instance.
    GenFamily(FamilyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input string, taken byte by byte.
    #[arg(conflicts_with = "file")]
    input: Option<String>,

    /// Read the input from a file instead; one trailing newline is dropped.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Allowed symbols, e.g. `abcd` or `01`. Defaults to the distinct symbols
    /// of the input in order of first occurrence.
    #[arg(long)]
    alphabet: Option<String>,

    /// MAW enumeration: `oracle` (naive) or `automaton`.
    #[arg(long, default_value = "automaton", value_parser = parse_engine)]
    engine: Engine,
}

#[derive(Args)]
struct MawArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct SlideArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Window length d, with 1 <= d < n.
    #[arg(long, short = 'w')]
    window: usize,

    /// Include every step with its type partition and bound verdicts.
    #[arg(long)]
    per_step: bool,

    #[arg(long, hide = true, default_value_t = 0, allow_negative_numbers = true)]
    inject_bound_offset: i64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign config as JSON.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,

    /// exhaustive-binary, exhaustive-ternary, random or tightness.
    #[arg(long)]
    preset: Option<String>,

    /// Seed for random campaigns; overrides the config.
    #[arg(long)]
    seed: Option<u64>,

    /// oracle, automaton or both; overrides the config.
    #[arg(long, value_enum)]
    engine: Option<EngineArg>,

    #[arg(long, hide = true, allow_negative_numbers = true)]
    inject_bound_offset: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Oracle,
    Automaton,
    Both,
}

#[derive(Args)]
struct FamilyArgs {
    /// ZGeneral, BinaryExtremal, BinaryOneZeros, UnaryV, TotalSigma,
    /// TotalDistinct or AlternatingBinary.
    #[arg(long, value_parser = parse_family)]
    family: FamilyId,

    /// Window length.
    #[arg(long)]
    d: Option<usize>,

    /// Text length (TotalSigma, TotalDistinct, AlternatingBinary).
    #[arg(long)]
    n: Option<usize>,

    /// Distinct symbols in the window (ZGeneral).
    #[arg(long)]
    sigma_w: Option<usize>,

    /// Alphabet size (ZGeneral, TotalSigma, TotalDistinct).
    #[arg(long)]
    sigma: Option<usize>,

    /// Measure the instance and compare it with the expected value.
    #[arg(long)]
    check: bool,

    /// Engine used by --check: `oracle` or `automaton`.
    #[arg(long, default_value = "automaton", value_parser = parse_engine)]
    engine: Engine,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: MawError| e.to_string())
}

fn parse_family(s: &str) -> Result<FamilyId, String> {
    s.parse().map_err(|e: MawError| e.to_string())
}

/// A failed run: usage/input problems exit 2, verification failures exit 3.
enum Failure {
    Input(String),
    Verification,
}

impl From<MawError> for Failure {
    fn from(e: MawError) -> Self {
        match e {
            MawError::Falsified { .. } | MawError::Consistency(_) => {
                eprintln!("mawlab: {e}");
                Failure::Verification
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    format: Format,
    timestamps: bool,
    started: SystemTime,
    command: Vec<String>,
}

impl Ctx {
    fn emit(&self, alphabet: Option<Alphabet>, payload: Payload, csv: impl FnOnce(&mut dyn Write) -> mawlab::Result<()>) -> Result<(), Failure> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Json => {
                let mut env = ReportEnvelope::new(self.command.clone(), alphabet, payload);
                if self.timestamps {
                    env = env.with_timestamps(Timestamps::since(self.started));
                }
                writeln!(out, "{}", env.to_json()?)?;
            }
            Format::Csv => csv(&mut out)?,
            Format::Text => write!(out, "{}", render_text(&payload))?,
        }
        Ok(())
    }
}

fn read_input(args: &InputArgs) -> Result<(Vec<u8>, Alphabet), Failure> {
    let data = match (&args.input, &args.file) {
        (Some(s), None) => s.as_bytes().to_vec(),
        (None, Some(path)) => {
            let mut bytes =
                std::fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            if bytes.ends_with(b"\n") {
                bytes.pop();
                if bytes.ends_with(b"\r") {
                    bytes.pop();
                }
            }
            bytes
        }
        _ => return Err(Failure::Input("give the input as an argument or with --file".into())),
    };
    let alphabet = match &args.alphabet {
        Some(a) => Alphabet::new(a.as_bytes().to_vec())?,
        None => Alphabet::infer(&data)?,
    };
    alphabet.validate(&data)?;
    Ok((data, alphabet))
}

fn cmd_maw(ctx: &Ctx, args: &MawArgs) -> Outcome {
    let (data, alphabet) = read_input(&args.input)?;
    let set = args.input.engine.maws(&data, &alphabet)?;
    let for_csv = set.clone();
    ctx.emit(Some(alphabet), Payload::MawSet(set), |out| write_maw_csv(&for_csv, out))?;
    Ok(true)
}

fn cmd_slide(ctx: &Ctx, args: &SlideArgs) -> Outcome {
    let (data, alphabet) = read_input(&args.input)?;
    let engine = args.input.engine;
    let text = Text::new(data, &alphabet)?;
    let summary = slide_totals(&text, args.window, &alphabet, engine)?;
    let offset = args.inject_bound_offset;
    let steps = if args.per_step {
        let mut steps = slide_steps(&text, args.window, &alphabet, engine)?;
        for s in &mut steps {
            for r in [&mut s.append, &mut s.delete] {
                r.bound_verdicts = check_step(r, alphabet.size()).into_iter().map(|v| v.shifted(offset)).collect();
            }
        }
        Some(steps)
    } else {
        None
    };
    let report = SlideReport {
        text: text.to_string(),
        verdicts: check_summary(&text, &summary).into_iter().map(|v| v.shifted(offset)).collect(),
        tightness_ratio: TightnessRatio::of(&summary),
        summary,
        steps,
    };
    let ok = report.satisfied();
    let for_csv = report.clone();
    ctx.emit(Some(alphabet), Payload::Slide(report), |out| match &for_csv.steps {
        Some(steps) => write_slide_csv(steps, out),
        None => write_summary_csv(&for_csv.summary, out),
    })?;
    if !ok {
        eprintln!("mawlab: a bound verdict is violated");
    }
    Ok(ok)
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<CampaignConfig>(&raw).map_err(|e| Failure::Input(format!("malformed config: {e}")))?
        }
        (None, Some(name)) => CampaignConfig::preset(name, args.seed.unwrap_or(0))?,
        (None, None) => return Err(Failure::Input("give --config or --preset".into())),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(engine) = args.engine {
        config.engine = match engine {
            EngineArg::Oracle => EngineChoice::Oracle,
            EngineArg::Automaton => EngineChoice::Automaton,
            EngineArg::Both => EngineChoice::Both,
        };
    }
    if let Some(offset) = args.inject_bound_offset {
        config.bound_offset = offset;
    }
    let report = run_campaign(&config)?;
    let ok = report.passed();
    for f in report.falsifications.iter().take(5) {
        eprintln!("mawlab: falsified: {} (witness {})", f.claim, f.witness);
    }
    for m in report.engine_mismatches.iter().take(5) {
        eprintln!("mawlab: engines disagree on {:?}", m.subject);
    }
    let for_csv = report.clone();
    ctx.emit(None, Payload::Campaign(report), |out| write_campaign_csv(&for_csv, out))?;
    Ok(ok)
}

fn need(value: Option<usize>, name: &str, family: FamilyId) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("{family} needs --{name}")))
}

fn build_family(args: &FamilyArgs) -> Result<FamilyInstance, Failure> {
    let f = args.family;
    let d = || need(args.d, "d", f);
    let n = || need(args.n, "n", f);
    let sigma = || need(args.sigma, "sigma", f);
    Ok(match f {
        FamilyId::ZGeneral => gen_z(d()?, need(args.sigma_w, "sigma-w", f)?, sigma()?)?,
        FamilyId::BinaryExtremal => gen_binary_extremal(d()?)?,
        FamilyId::BinaryOneZeros => gen_binary_onezeros(d()?)?,
        FamilyId::UnaryV => gen_unary_v(d()?)?,
        FamilyId::TotalSigmaFamily => gen_total_sigma(n()?, d()?, sigma()?)?,
        FamilyId::TotalDistinctFamily => gen_total_distinct(n()?, d()?, sigma()?)?,
        FamilyId::AlternatingBinary => gen_alternating(n()?, d()?)?,
    })
}

fn cmd_gen_family(ctx: &Ctx, args: &FamilyArgs) -> Outcome {
    let instance = build_family(args)?;
    let check = if args.check { Some(instance.check(args.engine)?) } else { None };
    let ok = check.as_ref().is_none_or(|c| c.matches);
    if let Some(c) = check.as_ref().filter(|c| !c.matches) {
        for m in &c.mismatches {
            eprintln!("mawlab: {} mismatch: {m}", c.family_id);
        }
    }
    let alphabet = instance.alphabet.clone();
    let report = FamilyReport { instance, check };
    let for_csv = report.clone();
    ctx.emit(Some(alphabet), Payload::Family(report), |out| write_family_csv(&for_csv, out))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    let ctx = Ctx {
        format: cli.format,
        timestamps: !cli.no_timestamps,
        started: SystemTime::now(),
        command: std::env::args().collect(),
    };
    let outcome = match &cli.command {
        Command::Maw(a) => cmd_maw(&ctx, a),
        Command::Slide(a) => cmd_slide(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::GenFamily(a) => cmd_gen_family(&ctx, a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) | Err(Failure::Verification) => ExitCode::from(3),
        Err(Failure::Input(msg)) => {
            eprintln!("mawlab: error: {msg}");
            ExitCode::from(2)
        }
    }
}
