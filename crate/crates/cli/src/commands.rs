use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectra::ring::{check_extension_lo_lemma, check_kernel_lo_lemma, sweep_lying_over_lemmas};
use spectra::sweep::cost_estimate;
use spectra::{
    covering_pairs, exhaustive_verify_all, parse_hom, parse_ring, search_witness, spec, verify_many, Flag, Goal,
    PosetFamily, SweepConfig, TheoremId, VerifyOptions, WitnessSearchSpec,
};

use crate::document::{parse_instance, InstanceDocument};
use crate::dot::to_dot;
use crate::report::{family_name, Report, SearchSection, SpectrumSection, SweepSection};

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Check contraction maps between finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every property and layer condition on one instance.
    Check(CheckArgs),
    /// Run theorem verifiers on one instance, exhaustively, or over rings.
    Verify(VerifyArgs),
    /// Search for the smallest instance with given properties and violation.
    Search(SearchArgs),
    /// List the prime spectrum of a ring expression.
    Spec(SpecArgs),
    /// Export an instance as a Graphviz diagram.
    Dot(InputArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Instance document; `-` reads standard input.
    file: Option<PathBuf>,
    /// Inline ring homomorphism, e.g. `hom(m=6, target=Zn(2), e=1)`.
    #[arg(long, conflicts_with = "file")]
    ring: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Echoed in the report; defaults to the document's seed, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct JobsArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "SPECTRA_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Enumerate naturally labeled posets only.
    #[arg(long)]
    natural: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Sweep every instance within the bounds instead of one document.
    #[arg(long, conflicts_with_all = ["file", "ring", "ring_lemmas"])]
    exhaustive: bool,
    /// Sweep both lying-over lemmas over ring homomorphisms.
    #[arg(long, conflicts_with_all = ["file", "ring"])]
    ring_lemmas: bool,
    /// Comma-separated statement ids; defaults to all.
    #[arg(long, value_delimiter = ',')]
    theorems: Vec<String>,
    #[arg(long, default_value_t = spectra::sweep::DEFAULT_LIMITS.0)]
    max_s: usize,
    #[arg(long, default_value_t = spectra::sweep::DEFAULT_LIMITS.1)]
    max_r: usize,
    /// Allow contraction values TOP (the default).
    #[arg(long, overrides_with = "no_top")]
    allow_top: bool,
    /// Restrict sweeps to unitary maps.
    #[arg(long, overrides_with = "allow_top")]
    no_top: bool,
    /// Accept bounds up to |s| <= 4, |r| <= 6.
    #[arg(long)]
    large: bool,
    /// Check conclusions even where hypotheses fail.
    #[arg(long)]
    debug_waive_hypotheses: bool,
    /// Largest source modulus for `--ring-lemmas`.
    #[arg(long, default_value_t = 30)]
    max_m: u64,
    /// Largest target factor modulus for `--ring-lemmas`.
    #[arg(long, default_value_t = 30)]
    max_n: u64,
    #[command(flatten)]
    jobs: JobsArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Comma-separated flags such as `UNITARY,GU,!LO`.
    #[arg(long, value_delimiter = ',')]
    require: Vec<String>,
    /// `not-cover[:k]`, `not-perfect-cover[:k]`, `fails:P`, `violates:ID` or
    /// `violates-waived:ID`.
    #[arg(long)]
    goal: String,
    #[arg(long, default_value_t = 3)]
    max_s: usize,
    #[arg(long, default_value_t = 4)]
    max_r: usize,
    #[command(flatten)]
    jobs: JobsArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Ring expression, e.g. `Zn(12)` or `Product(Zn(2),Zn(3))`.
    ring: String,
    #[command(flatten)]
    output: OutputArgs,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl RunOutput {
    fn input_error(message: impl std::fmt::Display) -> Self {
        RunOutput {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: 2,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                RunOutput {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let mut stderr = String::new();
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Verify(a) => verify(a, &mut stderr),
        Command::Search(a) => search(a, &mut stderr),
        Command::Spec(a) => spectrum(a),
        Command::Dot(a) => load(&a).map(|doc| (to_dot(&doc.map), 0)),
    };
    match result {
        Ok((stdout, code)) => RunOutput { stdout, stderr, code },
        Err(message) => {
            let mut out = RunOutput::input_error(message);
            out.stderr.insert_str(0, &stderr);
            out
        }
    }
}

type Outcome = Result<(String, i32), String>;

fn load(input: &InputArgs) -> Result<InstanceDocument, String> {
    if let Some(text) = &input.ring {
        return parse_hom(text).map(InstanceDocument::from_ring).map_err(|e| e.to_string());
    }
    let text = match input.file.as_deref() {
        None => return Err("an instance file or --ring is required".into()),
        Some(p) if p.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading standard input: {e}"))?;
            buf
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("reading {}: {e}", p.display()))?,
    };
    parse_instance(&text).map_err(|e| e.to_string())
}

fn render(report: &Report, format: Format) -> (String, i32) {
    let text = match format {
        Format::Json => report.to_json_string(),
        Format::Text => report.to_text(),
    };
    (text, report.exit_code())
}

fn seed_for(output: &OutputArgs, doc: Option<&InstanceDocument>) -> u64 {
    output.seed.or(doc.and_then(|d| d.seed)).unwrap_or(0)
}

fn parse_ids(raw: &[String]) -> Result<Vec<TheoremId>, String> {
    if raw.is_empty() {
        return Ok(TheoremId::ALL.to_vec());
    }
    raw.iter().map(|s| s.parse::<TheoremId>()).collect()
}

fn family(natural: bool) -> PosetFamily {
    if natural {
        PosetFamily::Natural
    } else {
        PosetFamily::Labeled
    }
}

fn check(a: CheckArgs) -> Outcome {
    let doc = load(&a.input)?;
    let mut report = Report::new("check", seed_for(&a.output, Some(&doc))).with_check(&doc.map);
    report.instance = Some(doc);
    Ok(render(&report, a.output.format))
}

fn split_exploratory(report: &mut Report, verdicts: Vec<spectra::Verdict>) {
    for v in verdicts {
        match v.statement {
            spectra::Statement::Theorem(t) if t.is_exploratory() => report.exploratory.push(v),
            _ => report.verdicts.push(v),
        }
    }
}

fn verify(a: VerifyArgs, stderr: &mut String) -> Outcome {
    if a.ring_lemmas {
        let start = Instant::now();
        let (kernel, extension) = sweep_lying_over_lemmas(a.max_m, a.max_n);
        stderr.push_str(&format!(
            "ring lemmas: {} homomorphisms, {} unitary, {:.2?}\n",
            kernel.instances_checked,
            extension.instances_checked,
            start.elapsed()
        ));
        let mut report = Report::new("verify", seed_for(&a.output, None));
        report.ring_lemmas = vec![kernel, extension];
        return Ok(render(&report, a.output.format));
    }
    let ids = parse_ids(&a.theorems)?;
    let opts = VerifyOptions {
        waive_hypotheses: a.debug_waive_hypotheses,
    };
    if a.exhaustive {
        let cfg = SweepConfig {
            max_s: a.max_s,
            max_r: a.max_r,
            allow_top: !a.no_top,
            jobs: a.jobs.jobs,
            waive_hypotheses: a.debug_waive_hypotheses,
            allow_large: a.large,
            family: family(a.jobs.natural),
        };
        let estimate = cost_estimate(&cfg).map_err(|e| e.to_string())?;
        stderr.push_str(&format!("estimated at most {estimate} instances\n"));
        let start = Instant::now();
        let verdicts = exhaustive_verify_all(&ids, &cfg).map_err(|e| e.to_string())?;
        stderr.push_str(&format!(
            "swept {} instances in {:.2?}\n",
            verdicts.first().map_or(0, |v| v.instances_checked),
            start.elapsed()
        ));
        let mut report = Report::new("verify", seed_for(&a.output, None));
        report.sweep = Some(SweepSection {
            max_s: cfg.max_s,
            max_r: cfg.max_r,
            allow_top: cfg.allow_top,
            family: family_name(cfg.family),
            waive_hypotheses: cfg.waive_hypotheses,
        });
        split_exploratory(&mut report, verdicts);
        return Ok(render(&report, a.output.format));
    }
    let doc = load(&a.input)?;
    let mut report = Report::new("verify", seed_for(&a.output, Some(&doc)));
    split_exploratory(&mut report, verify_many(&doc.map, &ids, opts));
    if let Some(h) = &doc.ring {
        report.ring_lemmas.push(check_kernel_lo_lemma(h));
        if h.is_unitary() {
            report.ring_lemmas.push(check_extension_lo_lemma(h).map_err(|e| e.to_string())?);
        }
    }
    report.instance = Some(doc);
    Ok(render(&report, a.output.format))
}

fn search(a: SearchArgs, stderr: &mut String) -> Outcome {
    let required = a
        .require
        .iter()
        .map(|s| s.parse::<Flag>())
        .collect::<Result<Vec<_>, _>>()?;
    let goal: Goal = a.goal.parse()?;
    let mut spec = WitnessSearchSpec::new(required, goal, a.max_s, a.max_r);
    spec.seed = seed_for(&a.output, None);
    spec.family = family(a.jobs.natural);
    spec.jobs = a.jobs.jobs;
    let start = Instant::now();
    let outcome = search_witness(&spec).map_err(|e| e.to_string())?;
    stderr.push_str(&format!(
        "search {} in {:.2?}\n",
        if outcome.witness.is_some() { "found a witness" } else { "exhausted the bounds" },
        start.elapsed()
    ));
    let mut report = Report::new("search", spec.seed);
    report.search = Some(SearchSection { spec, outcome });
    Ok(render(&report, a.output.format))
}

fn spectrum(a: SpecArgs) -> Outcome {
    let ring = parse_ring(&a.ring).map_err(|e| e.to_string())?;
    let p = spec(&ring);
    let mut report = Report::new("spec", seed_for(&a.output, None));
    report.spectrum = Some(SpectrumSection {
        ring: ring.to_string(),
        primes: p.labels().to_vec(),
        order: covering_pairs(&p)
            .into_iter()
            .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
            .collect(),
    });
    Ok(render(&report, a.output.format))
}
