//! Command-line front end: parsing, corpus, reports and the four commands.

pub mod corpus;
pub mod dsl;
pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use brimlab_core::{
    buchsbaum_spread, build_koszul, theorem_check, BRReport, CheckOptions, ModuleMatrix,
    SamplingSpec,
};

use corpus::{corpus, CorpusEntry, Expected};
use dsl::{parse_spec, ProblemSpec};
use report::{Format, Report, SpreadOut};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<brimlab_core::Error> for CliError {
    fn from(e: brimlab_core::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "brimlab",
    version,
    about = "Buchsbaum-Rim multiplicities and generalized Koszul complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format (overrides the options block)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Maximum number of S-pairs per Gröbner basis
    #[arg(long, global = true)]
    pub budget_pairs: Option<u64>,
    /// Maximum S-pair degree per Gröbner basis
    #[arg(long, global = true)]
    pub budget_degree: Option<u32>,
    /// Largest n at which lambda(n) is evaluated
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lengths, multiplicity, homology and checks for one module
    Analyze {
        file: PathBuf,
        /// Range of t, written a..b
        #[arg(long, allow_hyphen_values = true)]
        t_range: Option<String>,
    },
    /// Run every check on a spec file or on the built-in corpus
    Verify {
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
    /// Analyze the built-in corpus and compare with the frozen values
    Corpus {
        /// Only entries whose name starts with this prefix
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true)]
        tamper: Vec<String>,
    },
    /// Sample random parameter modules and report l(F/N) - e(F/N)
    Spread {
        file: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Degree of the random entries
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Print the differentials of K(a; t) as sparse triplets
    Complex {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(e: CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze { file, t_range } => cmd_analyze(&cli, file, t_range.as_deref()),
        Command::Verify {
            file,
            corpus,
            inject_sign_flip,
        } => cmd_verify(&cli, file.as_ref(), *corpus, *inject_sign_flip),
        Command::Corpus { filter, tamper } => cmd_corpus(&cli, filter.as_deref(), tamper),
        Command::Spread {
            file,
            samples,
            seed,
            degree,
        } => cmd_spread(&cli, file, *samples, *seed, *degree),
        Command::Complex { file, t } => cmd_complex(&cli, file, *t),
    };
    result.unwrap_or_else(Outcome::error)
}

fn load(cli: &Cli, file: &PathBuf) -> Result<ProblemSpec, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let mut spec =
        parse_spec(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    apply_overrides(cli, &mut spec);
    Ok(spec)
}

fn apply_overrides(cli: &Cli, spec: &mut ProblemSpec) {
    if cli.budget_pairs.is_some() {
        spec.options.budget_pairs = cli.budget_pairs;
    }
    if cli.budget_degree.is_some() {
        spec.options.budget_degree = cli.budget_degree;
    }
    if cli.nmax.is_some() {
        spec.options.n_max = cli.nmax;
    }
    if cli.format.is_some() {
        spec.options.format = cli.format;
    }
}

pub fn parse_t_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("bad t range '{s}', expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn module_of(spec: &ProblemSpec) -> Result<ModuleMatrix, CliError> {
    let ring = spec.build_ring()?;
    spec.build_matrix(&ring)?
        .ok_or_else(|| CliError::Input("the module block has no matrix".into()))
}

/// Runs the full analysis of one spec.
pub fn analyze_spec(
    spec: &ProblemSpec,
    inject_sign_flip: bool,
) -> Result<(BRReport, Report), CliError> {
    let start = Instant::now();
    let matrix = module_of(spec)?;
    let opts = CheckOptions {
        t_range: spec.options.t_range,
        n_max: spec.options.n_max,
        inject_sign_flip,
    };
    let core = theorem_check(&matrix, &opts)?;
    let report = Report::from_core(&core, &matrix.rows(), start.elapsed().as_millis() as u64);
    Ok((core, report))
}

fn cmd_analyze(cli: &Cli, file: &PathBuf, t_range: Option<&str>) -> Result<Outcome, CliError> {
    let mut spec = load(cli, file)?;
    if let Some(t) = t_range {
        spec.options.t_range = Some(parse_t_range(t)?);
    }
    let (_, report) = analyze_spec(&spec, false)?;
    Ok(Outcome::ok(
        report.render(spec.options.format.unwrap_or_default()),
    ))
}

/// Problems found by `verify` for one spec; empty when everything holds.
pub fn verify_spec(spec: &ProblemSpec, inject_sign_flip: bool) -> Result<Vec<String>, CliError> {
    let matrix = module_of(spec)?;
    let full = brimlab_core::multiplicity::supported_t_range(&matrix);
    let mut spec = spec.clone();
    spec.options.t_range = Some(spec.options.t_range.unwrap_or(full));
    let (core, _) = analyze_spec(&spec, inject_sign_flip)?;
    Ok(core
        .verdicts
        .failures()
        .into_iter()
        .map(String::from)
        .collect())
}

fn cmd_verify(
    cli: &Cli,
    file: Option<&PathBuf>,
    use_corpus: bool,
    inject: bool,
) -> Result<Outcome, CliError> {
    let specs: Vec<(String, ProblemSpec)> = match (file, use_corpus) {
        (Some(f), false) => vec![(f.display().to_string(), load(cli, f)?)],
        (None, true) => corpus()
            .into_iter()
            .map(|e| {
                let mut s = e.spec();
                apply_overrides(cli, &mut s);
                (e.name.to_string(), s)
            })
            .collect(),
        _ => {
            return Err(CliError::Input(
                "give either a spec file or --corpus".into(),
            ))
        }
    };
    let results: Vec<Result<Vec<String>, CliError>> = specs
        .par_iter()
        .map(|(_, s)| verify_spec(s, inject))
        .collect();
    let mut out = String::new();
    let mut code = EXIT_OK;
    for ((name, spec), res) in specs.iter().zip(results) {
        let failures = res?;
        if failures.is_empty() {
            let _ = writeln!(out, "ok    {name}");
        } else {
            code = EXIT_VIOLATION;
            let _ = writeln!(out, "FAIL  {name}: {}", failures.join(", "));
            let _ = writeln!(out, "      reproduce with:");
            for line in spec.to_text().lines() {
                let _ = writeln!(out, "      {line}");
            }
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code,
    })
}

/// Differences between a computed report and a frozen record, by field name.
pub fn compare(expected: &Expected, core: &BRReport) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |field: &str, want: String, got: String| {
        if want != got {
            out.push(format!("{field}: expected {want}, got {got}"));
        }
    };
    check("d", expected.d.to_string(), core.d.to_string());
    check(
        "F_mod_N",
        expected.colength.to_string(),
        core.colength.to_string(),
    );
    check(
        "A_mod_IN",
        expected.fitting_colength.to_string(),
        core.fitting_colength.to_string(),
    );
    check("e0", expected.e0.to_string(), core.e0.to_string());
    check(
        "coefficients",
        format!("{:?}", expected.coefficients),
        format!("{:?}", core.coefficients),
    );
    let got_h: Vec<(i64, Vec<u64>)> = core
        .slices
        .iter()
        .map(|s| (s.t, s.euler.lengths.clone()))
        .collect();
    check(
        "H_lengths",
        format!("{:?}", expected.h_lengths),
        format!("{got_h:?}"),
    );
    if core.verdicts.parameter_module {
        let equal = core.colength as i64 == core.e0 && core.fitting_colength as i64 == core.e0;
        let strict = core.colength as i64 > core.e0;
        if expected.cohen_macaulay && !equal {
            out.push("cohen_macaulay: expected l(F/N) = l(A/I(N)) = e".into());
        }
        if !expected.cohen_macaulay && !strict {
            out.push("cohen_macaulay: expected l(F/N) > e on a non-CM ring".into());
        }
    }
    if !core.verdicts.all_hold() {
        out.push(format!("verdicts: {}", core.verdicts.failures().join(", ")));
    }
    out
}

/// Runs the selected corpus entries; returns the rendered table and whether
/// every entry matched.
pub fn run_corpus(entries: &[CorpusEntry], cli: Option<&Cli>) -> Result<(String, bool), CliError> {
    let results: Vec<Result<BRReport, CliError>> = entries
        .par_iter()
        .map(|e| {
            let mut spec = e.spec();
            if let Some(cli) = cli {
                apply_overrides(cli, &mut spec);
            }
            analyze_spec(&spec, false).map(|(core, _)| core)
        })
        .collect();
    let mut table = format!(
        "{:<5} {:>2} {:>2} {:>2} {:>7} {:>9} {:>4} {:<7} {}\n",
        "name", "d", "r", "n", "l(F/N)", "l(A/I(N))", "e0", "CM", "result"
    );
    let mut all_ok = true;
    for (e, res) in entries.iter().zip(results) {
        let core = res?;
        let problems = compare(&e.expected, &core);
        all_ok &= problems.is_empty();
        let _ = writeln!(
            table,
            "{:<5} {:>2} {:>2} {:>2} {:>7} {:>9} {:>4} {:<7} {}",
            e.name,
            core.d,
            core.r,
            core.n,
            core.colength,
            core.fitting_colength,
            core.e0,
            if e.expected.cohen_macaulay {
                "CM"
            } else {
                "non-CM"
            },
            if problems.is_empty() {
                "ok".to_string()
            } else {
                format!("MISMATCH {}", problems.join("; "))
            }
        );
    }
    Ok((table, all_ok))
}

fn cmd_corpus(cli: &Cli, filter: Option<&str>, tamper: &[String]) -> Result<Outcome, CliError> {
    let mut entries: Vec<CorpusEntry> = corpus()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.starts_with(f)))
        .collect();
    for t in tamper {
        let (name, field) = t
            .split_once('.')
            .ok_or_else(|| CliError::Input(format!("bad --tamper '{t}', expected NAME.field")))?;
        let entry = entries
            .iter_mut()
            .find(|e| e.name == name)
            .ok_or_else(|| CliError::Input(format!("no corpus entry named '{name}'")))?;
        entry.expected.tamper(field).map_err(CliError::Input)?;
    }
    let (table, ok) = run_corpus(&entries, Some(cli))?;
    Ok(Outcome {
        stdout: table,
        stderr: String::new(),
        code: if ok { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn cmd_spread(
    cli: &Cli,
    file: &PathBuf,
    samples: Option<usize>,
    seed: Option<u64>,
    degree: Option<u32>,
) -> Result<Outcome, CliError> {
    let spec = load(cli, file)?;
    let ring = spec.build_ring()?;
    let sampling = SamplingSpec {
        samples: samples.or(spec.options.samples).unwrap_or(20),
        seed: seed.or(spec.options.seed).unwrap_or(0),
        degree: degree.or(spec.options.degree).unwrap_or(1),
        n_max: spec.options.n_max,
        ..SamplingSpec::default()
    };
    if sampling.degree == 0 {
        return Err(CliError::Input("entry degree must be positive".into()));
    }
    let rep = buchsbaum_spread(&ring, spec.rank, &sampling)?;
    let out = SpreadOut::from_core(&ring, &rep, sampling.seed, sampling.degree);
    Ok(Outcome::ok(
        out.render(spec.options.format.unwrap_or_default()),
    ))
}

fn cmd_complex(cli: &Cli, file: &PathBuf, t: i64) -> Result<Outcome, CliError> {
    let spec = load(cli, file)?;
    let matrix = module_of(&spec)?;
    let c = build_koszul(&matrix, t)?;
    Ok(Outcome::ok(c.export_differentials()))
}
