//! Command-line front end: `test` a CSV series, `simulate` a model to CSV,
//! or run an `experiment` grid from a JSON config.
//!
//! Exit codes are a stable contract: 0 success, 1 usage or configuration
//! error, 2 data error, 3 numerical failure.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::csvio::{read_series_csv, write_series_csv};
use crate::error::{Error, Result};
use crate::estimators::{sample_skewness, Basis, TestFunctionSet};
use crate::experiments::{
    paper_tables_config, replicated_study, single_run_table, write_report, ExperimentConfig,
    ExperimentReport, FunctionFamily, ReportFormat,
};
use crate::models::{
    simulate_with_volatility, GarchCoeffs, InnovationLaw, ModelFamily, ModelSpec, SeedSpec,
};
use crate::portmanteau::{run_variant, TestResult, TestVariant, VariantKind};
use crate::series::Series;

/// Environment variable consulted for the default seed when `--seed` is not
/// given.
pub const SEED_ENV_VAR: &str = "IIDTEST_SEED";
const BUILTIN_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "iidtest",
    version,
    about = "Portmanteau tests for the i.i.d. hypothesis on time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a series read from CSV for the i.i.d. hypothesis.
    Test(TestArgs),
    /// Simulate AR(1), MA(1), stochastic volatility, or GARCH(1,1) to CSV.
    Simulate(SimulateArgs),
    /// Run a Monte Carlo experiment grid and write CSV + JSON reports.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantChoice {
    /// Plain sum of squared stacked correlations.
    #[value(alias = "plain")]
    PlainT,
    /// Small-sample weighted form; equals Ljung-Box for --functions id.
    #[value(alias = "ljung")]
    LjungL,
    /// Whitened by the estimated contemporaneous matrix.
    WhitenedT,
    /// Whitened and weighted; the default combined test.
    WhitenedL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionChoice {
    Id,
    Abs,
    IdAbs,
    IdSquare,
    Trig,
}

impl From<FunctionChoice> for FunctionFamily {
    fn from(choice: FunctionChoice) -> Self {
        match choice {
            FunctionChoice::Id => FunctionFamily::Id,
            FunctionChoice::Abs => FunctionFamily::Abs,
            FunctionChoice::IdAbs => FunctionFamily::IdAbs,
            FunctionChoice::IdSquare => FunctionFamily::IdSquare,
            FunctionChoice::Trig => FunctionFamily::Trig,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    Correlation,
    Covariance,
}

impl From<BasisChoice> for Basis {
    fn from(choice: BasisChoice) -> Self {
        match choice {
            BasisChoice::Correlation => Basis::Correlation,
            BasisChoice::Covariance => Basis::Covariance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Ar1,
    Ma1,
    Sv,
    Garch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawChoice {
    Gaussian,
    Laplace,
    /// Laplace with the literal density 0.5 exp(-|z|) (variance 2).
    LaplaceLiteral,
}

impl From<LawChoice> for InnovationLaw {
    fn from(choice: LawChoice) -> Self {
        match choice {
            LawChoice::Gaussian => InnovationLaw::gaussian(),
            LawChoice::Laplace => InnovationLaw::laplace(),
            LawChoice::LaplaceLiteral => InnovationLaw::laplace_literal(),
        }
    }
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// CSV file with one numeric column (header optional).
    #[arg(long)]
    pub input: PathBuf,
    /// Number of lags K.
    #[arg(long, default_value_t = 5)]
    pub lags: usize,
    /// Transform family applied to the series.
    #[arg(long, value_enum, default_value_t = FunctionChoice::IdAbs)]
    pub functions: FunctionChoice,
    /// Frequency a of the bounded family (sin(ax), cos(ax)).
    #[arg(long, default_value_t = 1.0)]
    pub trig_scale: f64,
    /// Statistic variant; may be repeated.
    #[arg(long, value_enum)]
    pub variant: Vec<VariantChoice>,
    /// Significance level for the printed decision.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Weighting constant of the L-type statistics.
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// Contemporaneous matrix used by whitened variants.
    #[arg(long, value_enum, default_value_t = BasisChoice::Correlation)]
    pub basis: BasisChoice,
    /// Emit machine-readable JSON instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub model: ModelChoice,
    /// Dependence parameter in (0, 1); optional when --garch-coeffs is given.
    #[arg(long)]
    pub a: Option<f64>,
    /// Sample length.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = LawChoice::Gaussian)]
    pub innovations: LawChoice,
    /// Master seed; defaults to $IIDTEST_SEED, then 1.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sub-stream index under the master seed.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Leading observations simulated and discarded.
    #[arg(long, default_value_t = 0)]
    pub burn_in: usize,
    /// Explicit GARCH coefficients "a0,b,c" replacing the equal-thirds form.
    #[arg(long, value_parser = parse_garch_coeffs)]
    pub garch_coeffs: Option<GarchCoeffs>,
    /// Output CSV path.
    #[arg(long)]
    pub output: PathBuf,
    /// Add the volatility path as a second column (SV and GARCH only).
    #[arg(long)]
    pub with_volatility: bool,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// JSON experiment configuration.
    #[arg(long, conflicts_with = "paper_tables")]
    pub config: Option<PathBuf>,
    /// Preset reproducing the four-table single-realization layout.
    #[arg(long)]
    pub paper_tables: bool,
    /// Master seed override; defaults to $IIDTEST_SEED, then 1.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Replication count override.
    #[arg(long)]
    pub replications: Option<usize>,
    /// Directory for the CSV and JSON reports.
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
    /// Report file stem: writes `<prefix>.csv` and `<prefix>.json`.
    #[arg(long, default_value = "experiment")]
    pub prefix: String,
}

fn parse_garch_coeffs(raw: &str) -> std::result::Result<GarchCoeffs, String> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated values, got '{raw}'"
        ));
    }
    let mut values = [0.0; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| format!("cannot parse '{part}' as a number"))?;
    }
    GarchCoeffs::new(values[0], values[1], values[2]).map_err(|e| e.to_string())
}

/// Map an error to the documented exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_)
        | Error::Config { .. }
        | Error::InvalidProbability(_)
        | Error::RequiresUncorrelated => 1,
        Error::Io { .. }
        | Error::Parse { .. }
        | Error::SeriesTooShort { .. }
        | Error::NonFinite { .. }
        | Error::DegenerateVariance { .. }
        | Error::LagOutOfRange { .. }
        | Error::LengthMismatch { .. } => 2,
        Error::DimensionMismatch(_)
        | Error::NotSymmetric
        | Error::NotPositiveDefinite { .. }
        | Error::WhiteningFailure { .. }
        | Error::NegativeArgument(_) => 3,
    }
}

/// Parse argv and run; returns the process exit code.
pub fn execute<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match run(&cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Test(args) => cmd_test(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Experiment(args) => cmd_experiment(args),
    }
}

/// Seed precedence: the --seed flag, then $IIDTEST_SEED, then None.
fn seed_override(flag: Option<u64>) -> Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw.parse().map(Some).map_err(|_| {
            Error::InvalidParameter(format!("{SEED_ENV_VAR}='{raw}' is not a valid seed"))
        }),
        Err(_) => Ok(None),
    }
}

#[derive(Debug, Serialize)]
struct TestOutputItem {
    #[serde(flatten)]
    result: TestResult,
    reject: bool,
}

#[derive(Debug, Serialize)]
struct TestOutput {
    input: String,
    #[serde(rename = "N")]
    n: usize,
    alpha: f64,
    results: Vec<TestOutputItem>,
}

fn variant_for(choice: VariantChoice, c: f64, basis: Basis) -> TestVariant {
    let kind = match choice {
        VariantChoice::PlainT => VariantKind::PlainT,
        VariantChoice::LjungL => VariantKind::LjungL,
        VariantChoice::WhitenedT => VariantKind::WhitenedT,
        VariantChoice::WhitenedL => VariantKind::WhitenedL,
    };
    TestVariant { kind, c, basis }
}

fn warn_on_skewness(x: &Series, funcs: &TestFunctionSet) {
    // The (x, |x|) family relies on a symmetric distribution; flag samples
    // whose skewness is implausible under symmetry.
    if funcs.len() != 2 {
        return;
    }
    let names: Vec<String> = funcs.functions().iter().map(|f| f.name()).collect();
    if names != ["id", "abs"] {
        return;
    }
    let skew = sample_skewness(x);
    let threshold = 4.0 * (6.0 / x.len() as f64).sqrt();
    if skew.abs() > threshold {
        eprintln!(
            "warning: sample skewness {skew:.3} exceeds {threshold:.3}; the (x, |x|) family \
             assumes a symmetric distribution - consider a whitened variant"
        );
    }
}

fn cmd_test(args: &TestArgs) -> Result<()> {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(Error::InvalidProbability(args.alpha));
    }
    let series = read_series_csv(&args.input)?;
    let family: FunctionFamily = args.functions.into();
    let funcs = family.build(args.trig_scale)?;
    warn_on_skewness(&series, &funcs);

    let choices = if args.variant.is_empty() {
        vec![VariantChoice::WhitenedL]
    } else {
        args.variant.clone()
    };
    let mut results = Vec::new();
    for choice in choices {
        let variant = variant_for(choice, args.c, args.basis.into());
        let result = run_variant(&series, &funcs, args.lags, variant)?;
        let reject = result.rejects_at(args.alpha);
        results.push(TestOutputItem { result, reject });
    }

    if args.json {
        let output = TestOutput {
            input: args.input.display().to_string(),
            n: series.len(),
            alpha: args.alpha,
            results,
        };
        println!("{}", serde_json::to_string_pretty(&output).unwrap());
    } else {
        println!("input: {} (N = {})", args.input.display(), series.len());
        println!(
            "{:<16} {:>12} {:>6} {:>10}   decision (alpha = {})",
            "variant", "statistic", "df", "p-value", args.alpha
        );
        for item in &results {
            println!(
                "{:<16} {:>12.4} {:>6} {:>10.4}   {}",
                item.result.variant.label(),
                item.result.statistic,
                item.result.df,
                item.result.p_value,
                if item.reject { "reject" } else { "accept" }
            );
        }
    }
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let seed_value = seed_override(args.seed)?.unwrap_or(BUILTIN_SEED);
    let law: InnovationLaw = args.innovations.into();

    let require_a = || {
        args.a
            .ok_or_else(|| Error::InvalidParameter("--a is required for this model".into()))
    };
    let spec = match args.model {
        ModelChoice::Ar1 => ModelSpec::ar1(require_a()?, law, args.n)?,
        ModelChoice::Ma1 => ModelSpec::ma1(require_a()?, law, args.n)?,
        ModelChoice::Sv => ModelSpec::sv(require_a()?, law, args.n)?,
        ModelChoice::Garch => match args.garch_coeffs {
            Some(coeffs) => ModelSpec::garch(coeffs, law, args.n)?,
            None => ModelSpec::garch_equal(require_a()?, law, args.n)?,
        },
    }
    .with_burn_in(args.burn_in);

    if args.with_volatility && !matches!(spec.family, ModelFamily::Sv | ModelFamily::Garch11) {
        return Err(Error::InvalidParameter(format!(
            "--with-volatility applies to sv and garch, not {}",
            spec.family.label()
        )));
    }

    let seed = SeedSpec::new(seed_value, args.stream);
    let (series, volatility) = simulate_with_volatility(&spec, &seed)?;

    let mut comment = format!(
        "model={} innovations={} n={} seed={} stream={} burn-in={}",
        spec.family.label(),
        law.label(),
        args.n,
        seed_value,
        args.stream,
        args.burn_in
    );
    if spec.family == ModelFamily::Garch11 {
        let coeffs = spec.effective_garch_coeffs()?;
        // Round for display; a/3 is one ulp off a short decimal.
        let compact = |v: f64| {
            let s = format!("{v:.10}");
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        };
        comment.push_str(&format!(
            " a={} coefficients a0={} b={} c={}",
            spec.a,
            compact(coeffs.a0),
            compact(coeffs.b),
            compact(coeffs.c)
        ));
    } else {
        comment.push_str(&format!(" a={}", spec.a));
    }

    let volatility_column = if args.with_volatility {
        volatility.as_deref()
    } else {
        None
    };
    write_series_csv(&args.output, &series, volatility_column, &[comment])?;
    println!("wrote {} rows to {}", series.len(), args.output.display());
    Ok(())
}

fn load_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = if args.paper_tables {
        paper_tables_config(BUILTIN_SEED)
    } else {
        let path = args.config.as_ref().ok_or_else(|| {
            Error::InvalidParameter(
                "experiment needs either --config <file> or --paper-tables".into(),
            )
        })?;
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| Error::Config {
            field: e.to_string(),
            message: format!("in {}", path.display()),
        })?
    };
    if let Some(r) = args.replications {
        cfg.replications = r;
    }
    // A config file's own master_seed stands unless the flag or environment
    // variable overrides it.
    if let Some(seed) = seed_override(args.seed)? {
        cfg.master_seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<()> {
    let cfg = load_config(args)?;
    let report = if cfg.replications == 1 {
        single_run_table(&cfg)?
    } else {
        replicated_study(&cfg)?
    };

    std::fs::create_dir_all(&args.output_dir)
        .map_err(|e| Error::io(args.output_dir.display().to_string(), e))?;
    let csv_path = args.output_dir.join(format!("{}.csv", args.prefix));
    let json_path = args.output_dir.join(format!("{}.json", args.prefix));
    write_report(&report, &csv_path, ReportFormat::Csv)?;
    write_report(&report, &json_path, ReportFormat::Json)?;

    print_summary(&report);
    println!(
        "reports written to {} and {}",
        csv_path.display(),
        json_path.display()
    );
    Ok(())
}

fn print_summary(report: &ExperimentReport) {
    let single_run = report.config.replications == 1;
    if single_run {
        print_single_run_tables(report);
    } else {
        println!(
            "{:<6} {:>4} {:<16} {:<16} {:>6} {:>8} {:>8} {:>6}",
            "family", "a", "law", "test", "alpha", "rate", "stderr", "fail"
        );
        for cell in &report.cells {
            println!(
                "{:<6} {:>4} {:<16} {:<16} {:>6} {:>8} {:>8} {:>6}",
                cell.family,
                cell.a,
                cell.law,
                cell.test,
                cell.alpha.map(|a| a.to_string()).unwrap_or_default(),
                cell.value
                    .map(|v| format!("{v:.4}"))
                    .unwrap_or_else(|| "-".into()),
                cell.stderr
                    .map(|v| format!("{v:.4}"))
                    .unwrap_or_else(|| "-".into()),
                cell.failures,
            );
        }
    }
}

/// One table per model family: rows are a-values, columns are (law, test)
/// pairs holding p-values of the shared realization.
fn print_single_run_tables(report: &ExperimentReport) {
    let cfg = &report.config;
    for family in &cfg.families {
        let label = family.label();
        println!(
            "== {label}: single-run p-values (N = {}, K = {}, seed = {}) ==",
            cfg.n, cfg.k_max, report.master_seed
        );
        print!("{:>6}", "a");
        for law in &cfg.laws {
            for test in &cfg.tests {
                print!(" {:>22}", format!("{}[{}]", test.label(), law.label()));
            }
        }
        println!();
        let a_axis: Vec<f64> = if *family == crate::experiments::GridFamily::Iid {
            vec![0.0]
        } else {
            cfg.a_values.clone()
        };
        for a in a_axis {
            print!("{a:>6}");
            for law in &cfg.laws {
                for test in &cfg.tests {
                    let cell = report.cells.iter().find(|c| {
                        c.family == label
                            && c.a == a
                            && c.law == law.label()
                            && c.test == test.label()
                    });
                    match cell.and_then(|c| c.value) {
                        Some(p) => print!(" {p:>22.3}"),
                        None => print!(" {:>22}", "-"),
                    }
                }
            }
            println!();
        }
        println!();
    }
}
