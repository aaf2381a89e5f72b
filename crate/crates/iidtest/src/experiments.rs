//! Monte Carlo harness: single-realization p-value tables, replicated
//! size/power studies, and a CLT diagnostic for the stacked estimators.
//!
//! Within a grid cell every test is applied to the same simulated series, so
//! p-value comparisons are paired. Replications run in parallel but results
//! are merged by replication index, so output never depends on scheduling or
//! thread count.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{build_stack, Basis, TestFunctionSet};
use crate::matrix::{kronecker, Matrix};
use crate::models::{draw_innovations, simulate, InnovationLaw, ModelSpec, SeedSpec};
use crate::portmanteau::{classic_ljung_box, ljung_box_abs, run_variant, TestResult, TestVariant};
use crate::series::Series;

/// Innovation law selector used in configs and CSV labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawSpec {
    Gaussian,
    Laplace,
    LaplaceLiteral,
}

impl LawSpec {
    pub fn law(self) -> InnovationLaw {
        match self {
            LawSpec::Gaussian => InnovationLaw::gaussian(),
            LawSpec::Laplace => InnovationLaw::laplace(),
            LawSpec::LaplaceLiteral => InnovationLaw::laplace_literal(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LawSpec::Gaussian => "gaussian",
            LawSpec::Laplace => "laplace",
            LawSpec::LaplaceLiteral => "laplace-literal",
        }
    }
}

/// Model axis of an experiment grid; `Iid` is the null itself, for size
/// studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridFamily {
    Iid,
    Ar1,
    Ma1,
    Sv,
    Garch,
}

impl GridFamily {
    pub fn label(self) -> &'static str {
        match self {
            GridFamily::Iid => "iid",
            GridFamily::Ar1 => "ar1",
            GridFamily::Ma1 => "ma1",
            GridFamily::Sv => "sv",
            GridFamily::Garch => "garch",
        }
    }

    fn uses_a(self) -> bool {
        self != GridFamily::Iid
    }
}

/// Named standard function families selectable from configs and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionFamily {
    Id,
    Abs,
    IdAbs,
    IdSquare,
    Trig,
}

impl FunctionFamily {
    pub fn build(self, trig_scale: f64) -> Result<TestFunctionSet> {
        match self {
            FunctionFamily::Id => Ok(TestFunctionSet::identity()),
            FunctionFamily::Abs => Ok(TestFunctionSet::absolute()),
            FunctionFamily::IdAbs => Ok(TestFunctionSet::id_abs()),
            FunctionFamily::IdSquare => Ok(TestFunctionSet::id_square()),
            FunctionFamily::Trig => TestFunctionSet::trig(trig_scale),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FunctionFamily::Id => "id",
            FunctionFamily::Abs => "abs",
            FunctionFamily::IdAbs => "id-abs",
            FunctionFamily::IdSquare => "id-square",
            FunctionFamily::Trig => "trig",
        }
    }
}

/// One test to run per cell: the two classic references or a combined
/// variant over the configured function family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestSpec {
    LjungBoxRaw,
    LjungBoxAbs,
    NewTest(TestVariant),
}

impl TestSpec {
    pub fn label(&self) -> String {
        match self {
            TestSpec::LjungBoxRaw => "ljung-box".into(),
            TestSpec::LjungBoxAbs => "ljung-box-abs".into(),
            TestSpec::NewTest(variant) => variant.label(),
        }
    }

    pub fn run(&self, x: &Series, funcs: &TestFunctionSet, k_max: usize) -> Result<TestResult> {
        match self {
            TestSpec::LjungBoxRaw => classic_ljung_box(x, k_max),
            TestSpec::LjungBoxAbs => ljung_box_abs(x, k_max),
            TestSpec::NewTest(variant) => run_variant(x, funcs, k_max, *variant),
        }
    }
}

/// What one replication simulates: the i.i.d. null or one of the four
/// alternative models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SeriesModel {
    Iid { law: LawSpec, length: usize },
    Simulated(ModelSpec),
}

impl SeriesModel {
    pub fn generate(&self, seed: &SeedSpec) -> Result<Series> {
        match self {
            SeriesModel::Iid { law, length } => draw_innovations(seed, law.law(), *length),
            SeriesModel::Simulated(spec) => simulate(spec, seed),
        }
    }
}

impl From<ModelSpec> for SeriesModel {
    fn from(spec: ModelSpec) -> Self {
        SeriesModel::Simulated(spec)
    }
}

/// Replication plan for a model grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub families: Vec<GridFamily>,
    pub a_values: Vec<f64>,
    pub laws: Vec<LawSpec>,
    pub n: usize,
    pub k_max: usize,
    pub functions: FunctionFamily,
    pub trig_scale: f64,
    pub tests: Vec<TestSpec>,
    pub replications: usize,
    pub alphas: Vec<f64>,
    pub master_seed: u64,
    pub burn_in: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            families: vec![
                GridFamily::Ar1,
                GridFamily::Ma1,
                GridFamily::Sv,
                GridFamily::Garch,
            ],
            a_values: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            laws: vec![LawSpec::Gaussian, LawSpec::Laplace],
            n: 100,
            k_max: 5,
            functions: FunctionFamily::IdAbs,
            trig_scale: 1.0,
            tests: vec![
                TestSpec::LjungBoxRaw,
                TestSpec::LjungBoxAbs,
                TestSpec::NewTest(TestVariant::whitened_l()),
            ],
            replications: 1000,
            alphas: vec![0.05],
            master_seed: 1,
            burn_in: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, message: String| Error::Config {
            field: name.into(),
            message,
        };
        if self.n < 2 {
            return Err(field(
                "n",
                format!("sample length must be >= 2, got {}", self.n),
            ));
        }
        if self.k_max < 1 || self.k_max > self.n - 2 {
            return Err(field(
                "k_max",
                format!(
                    "lags must lie in 1..={} for n = {}, got {}",
                    self.n - 2,
                    self.n,
                    self.k_max
                ),
            ));
        }
        if self.replications < 1 {
            return Err(field("replications", "must be >= 1".into()));
        }
        for &a in &self.a_values {
            if !(a > 0.0 && a < 1.0) {
                return Err(field(
                    "a_values",
                    format!("each a must lie in (0, 1), got {a}"),
                ));
            }
        }
        for &alpha in &self.alphas {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(field(
                    "alphas",
                    format!("each level must lie in (0, 1), got {alpha}"),
                ));
            }
        }
        if !self.trig_scale.is_finite() || self.trig_scale <= 0.0 {
            return Err(field(
                "trig_scale",
                format!("must be positive, got {}", self.trig_scale),
            ));
        }
        for test in &self.tests {
            if let TestSpec::NewTest(variant) = test {
                if !variant.c.is_finite() || variant.c <= 0.0 {
                    return Err(field(
                        "tests",
                        format!("variant constant c must be positive, got {}", variant.c),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn function_set(&self) -> Result<TestFunctionSet> {
        self.functions.build(self.trig_scale)
    }

    /// The (family, a, law) cells in their fixed iteration order. The `a`
    /// slot is zero for the i.i.d. null, which has no dependence parameter.
    fn cells(&self) -> Vec<(GridFamily, f64, LawSpec)> {
        let mut cells = Vec::new();
        for &family in &self.families {
            let a_axis: Vec<f64> = if family.uses_a() {
                self.a_values.clone()
            } else {
                vec![0.0]
            };
            for &a in &a_axis {
                for &law in &self.laws {
                    cells.push((family, a, law));
                }
            }
        }
        cells
    }

    fn model(&self, family: GridFamily, a: f64, law: LawSpec) -> Result<SeriesModel> {
        let spec = match family {
            GridFamily::Iid => {
                return Ok(SeriesModel::Iid {
                    law,
                    length: self.n,
                })
            }
            GridFamily::Ar1 => ModelSpec::ar1(a, law.law(), self.n)?,
            GridFamily::Ma1 => ModelSpec::ma1(a, law.law(), self.n)?,
            GridFamily::Sv => ModelSpec::sv(a, law.law(), self.n)?,
            GridFamily::Garch => ModelSpec::garch_equal(a, law.law(), self.n)?,
        };
        Ok(SeriesModel::Simulated(spec.with_burn_in(self.burn_in)))
    }
}

/// One output record of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub family: String,
    pub a: f64,
    pub law: String,
    pub test: String,
    pub alpha: Option<f64>,
    pub metric: String,
    pub value: Option<f64>,
    pub stderr: Option<f64>,
    /// Statistic of the single realization, or its mean over replications.
    pub statistic: Option<f64>,
    pub replications: usize,
    pub n: usize,
    pub k_max: usize,
    /// Sub-stream index of this cell under the master seed.
    pub stream_index: u64,
    pub failures: usize,
    pub error: Option<String>,
}

/// Full experiment output: configuration echo plus one record per cell/test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub master_seed: u64,
    pub unix_timestamp: u64,
    pub cells: Vec<CellResult>,
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// One simulated realization per cell, every configured test applied to the
/// same series; mirrors a published-table layout.
pub fn single_run_table(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let funcs = cfg.function_set()?;
    let mut cells = Vec::new();
    for (index, (family, a, law)) in cfg.cells().into_iter().enumerate() {
        let stream_index = index as u64;
        let seed = SeedSpec::new(cfg.master_seed, stream_index);
        let series = cfg
            .model(family, a, law)
            .and_then(|model| model.generate(&seed));
        for test in &cfg.tests {
            let base = CellResult {
                family: family.label().into(),
                a,
                law: law.label().into(),
                test: test.label(),
                alpha: None,
                metric: "p_value".into(),
                value: None,
                stderr: None,
                statistic: None,
                replications: 1,
                n: cfg.n,
                k_max: cfg.k_max,
                stream_index,
                failures: 0,
                error: None,
            };
            let cell = match &series {
                Ok(x) => match test.run(x, &funcs, cfg.k_max) {
                    Ok(result) => CellResult {
                        value: Some(result.p_value),
                        statistic: Some(result.statistic),
                        ..base
                    },
                    Err(err) => CellResult {
                        failures: 1,
                        error: Some(err.to_string()),
                        ..base
                    },
                },
                Err(err) => CellResult {
                    failures: 1,
                    error: Some(err.to_string()),
                    ..base
                },
            };
            cells.push(cell);
        }
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        master_seed: cfg.master_seed,
        unix_timestamp: now_unix(),
        cells,
    })
}

/// Rejection rate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub rate: f64,
    pub stderr: f64,
    /// Mean statistic over successful replications.
    pub statistic_mean: f64,
    pub successes: usize,
    pub failures: usize,
}

/// p-values and statistics over independent replications; parallel, merged
/// by replication index.
fn replicate_tests(
    model: &SeriesModel,
    test: &TestSpec,
    funcs: &TestFunctionSet,
    k_max: usize,
    replications: usize,
    seed: &SeedSpec,
) -> Vec<Result<TestResult>> {
    (0..replications)
        .into_par_iter()
        .map(|r| {
            let rep_seed = seed.child(r as u64);
            let x = model.generate(&rep_seed)?;
            test.run(&x, funcs, k_max)
        })
        .collect()
}

/// Fraction of replications whose p-value falls below alpha, with the
/// binomial standard error sqrt(r (1 - r) / R) over successful replications.
pub fn rejection_rate(
    model: &SeriesModel,
    test: &TestSpec,
    funcs: &TestFunctionSet,
    k_max: usize,
    alpha: f64,
    replications: usize,
    seed: &SeedSpec,
) -> Result<RateEstimate> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidProbability(alpha));
    }
    if replications == 0 {
        return Err(Error::InvalidParameter("replications must be >= 1".into()));
    }
    let outcomes = replicate_tests(model, test, funcs, k_max, replications, seed);
    Ok(summarize(&outcomes, alpha))
}

fn summarize(outcomes: &[Result<TestResult>], alpha: f64) -> RateEstimate {
    let mut rejections = 0usize;
    let mut successes = 0usize;
    let mut failures = 0usize;
    let mut stat_sum = 0.0;
    for outcome in outcomes {
        match outcome {
            Ok(result) => {
                successes += 1;
                stat_sum += result.statistic;
                if result.p_value < alpha {
                    rejections += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    let rate = if successes > 0 {
        rejections as f64 / successes as f64
    } else {
        f64::NAN
    };
    let stderr = if successes > 0 {
        (rate * (1.0 - rate) / successes as f64).sqrt()
    } else {
        f64::NAN
    };
    RateEstimate {
        rate,
        stderr,
        statistic_mean: if successes > 0 {
            stat_sum / successes as f64
        } else {
            f64::NAN
        },
        successes,
        failures,
    }
}

/// Replicated rejection-rate study over the configured grid; the
/// scientifically meaningful replacement for single-realization tables.
pub fn replicated_study(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let funcs = cfg.function_set()?;
    let mut cells = Vec::new();
    for (index, (family, a, law)) in cfg.cells().into_iter().enumerate() {
        let stream_index = index as u64;
        let seed = SeedSpec::new(cfg.master_seed, stream_index);
        let model = cfg.model(family, a, law)?;
        for test in &cfg.tests {
            let outcomes =
                replicate_tests(&model, test, &funcs, cfg.k_max, cfg.replications, &seed);
            for &alpha in &cfg.alphas {
                let estimate = summarize(&outcomes, alpha);
                let failed_all = estimate.successes == 0;
                let first_error = if failed_all {
                    outcomes
                        .iter()
                        .find_map(|o| o.as_ref().err().map(|e| e.to_string()))
                } else {
                    None
                };
                cells.push(CellResult {
                    family: family.label().into(),
                    a,
                    law: law.label().into(),
                    test: test.label(),
                    alpha: Some(alpha),
                    metric: "rejection_rate".into(),
                    value: if failed_all {
                        None
                    } else {
                        Some(estimate.rate)
                    },
                    stderr: if failed_all {
                        None
                    } else {
                        Some(estimate.stderr)
                    },
                    statistic: if failed_all {
                        None
                    } else {
                        Some(estimate.statistic_mean)
                    },
                    replications: cfg.replications,
                    n: cfg.n,
                    k_max: cfg.k_max,
                    stream_index,
                    failures: estimate.failures,
                    error: first_error,
                });
            }
        }
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        master_seed: cfg.master_seed,
        unix_timestamp: now_unix(),
        cells,
    })
}

/// Empirical covariance structure of the stacked estimators versus the
/// Kronecker product form of their limit, in one basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltMatrixDiagnostic {
    pub basis: Basis,
    /// Product-form limit matrix, estimated from one large i.i.d. sample.
    pub reference: Vec<Vec<f64>>,
    /// Per lag: empirical covariance matrix of sqrt(N) times the stacked
    /// vector, across replications.
    pub lag_covariances: Vec<Vec<Vec<f64>>>,
    /// Largest |empirical - reference| entry over all lags.
    pub max_same_lag_discrepancy: f64,
    /// Largest |empirical covariance| entry between distinct lags.
    pub max_cross_lag_covariance: f64,
}

/// CLT diagnostic in both bases over the same replications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    pub m: usize,
    pub n: usize,
    pub k_max: usize,
    pub replications: usize,
    pub covariance: CltMatrixDiagnostic,
    pub correlation: CltMatrixDiagnostic,
}

/// Sample size of the reference draw used to estimate the limit factors.
const CLT_REFERENCE_SAMPLE: usize = 1_000_000;

/// Compare the Monte Carlo covariance of the stacked estimators under the
/// i.i.d. null with the Kronecker product form of the limit, and check
/// independence across lags.
pub fn clt_diagnostic(
    funcs: &TestFunctionSet,
    law: InnovationLaw,
    n: usize,
    replications: usize,
    k_max: usize,
    master_seed: u64,
) -> Result<CltReport> {
    if n < 2 || k_max < 1 || k_max > n - 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and 1 <= k_max <= n - 2, got n = {n}, k_max = {k_max}"
        )));
    }
    if replications < 2 {
        return Err(Error::InvalidParameter(
            "need at least 2 replications".into(),
        ));
    }
    let m = funcs.len();
    let root = SeedSpec::new(master_seed, 0);

    // Limit factors from one large sample: the contemporaneous covariance and
    // correlation matrices of the transformed draws.
    let big = draw_innovations(&root.child(replications as u64), law, CLT_REFERENCE_SAMPLE)?;
    let ref_cov = build_stack(&big, funcs, 1, Basis::Covariance)?;
    let ref_corr = build_stack(&big, funcs, 1, Basis::Correlation)?;
    let q_ref = kronecker(ref_cov.contemporaneous(), ref_cov.contemporaneous());
    let c_ref = kronecker(ref_corr.contemporaneous(), ref_corr.contemporaneous());

    // sqrt(N)-scaled stacked vectors per replication, both bases.
    let scale = (n as f64).sqrt();
    let vectors: Vec<Result<(LagDraw, LagDraw)>> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let x = draw_innovations(&root.child(r as u64), law, n)?;
            let cov = build_stack(&x, funcs, k_max, Basis::Covariance)?;
            let corr = build_stack(&x, funcs, k_max, Basis::Correlation)?;
            let take = |stack: &crate::estimators::LagCorrelationStack| -> LagDraw {
                (1..=k_max)
                    .map(|k| stack.lag_vector(k).iter().map(|v| scale * v).collect())
                    .collect()
            };
            Ok((take(&cov), take(&corr)))
        })
        .collect();
    let mut cov_draws = Vec::with_capacity(replications);
    let mut corr_draws = Vec::with_capacity(replications);
    for v in vectors {
        let (c, r) = v?;
        cov_draws.push(c);
        corr_draws.push(r);
    }

    Ok(CltReport {
        m,
        n,
        k_max,
        replications,
        covariance: diagnose(Basis::Covariance, &q_ref, &cov_draws, m, k_max),
        correlation: diagnose(Basis::Correlation, &c_ref, &corr_draws, m, k_max),
    })
}

/// One replication's scaled lag vectors: k_max rows of m^2 entries.
type LagDraw = Vec<Vec<f64>>;

// Symmetric matrix fill writes both triangles per iteration.
#[allow(clippy::needless_range_loop)]
fn diagnose(
    basis: Basis,
    reference: &Matrix,
    draws: &[LagDraw],
    m: usize,
    k_max: usize,
) -> CltMatrixDiagnostic {
    let dim = m * m;
    let r = draws.len();
    // Means per (lag, entry).
    let mut means = vec![vec![0.0; dim]; k_max];
    for draw in draws {
        for k in 0..k_max {
            for p in 0..dim {
                means[k][p] += draw[k][p];
            }
        }
    }
    for row in &mut means {
        for v in row.iter_mut() {
            *v /= r as f64;
        }
    }

    let cov_between = |k1: usize, k2: usize, p: usize, q: usize| -> f64 {
        draws
            .iter()
            .map(|d| (d[k1][p] - means[k1][p]) * (d[k2][q] - means[k2][q]))
            .sum::<f64>()
            / r as f64
    };

    let mut lag_covariances = Vec::with_capacity(k_max);
    let mut max_same = 0.0_f64;
    for k in 0..k_max {
        let mut cov = vec![vec![0.0; dim]; dim];
        for p in 0..dim {
            for q in p..dim {
                let v = cov_between(k, k, p, q);
                cov[p][q] = v;
                cov[q][p] = v;
            }
        }
        for (p, row) in cov.iter().enumerate() {
            for (q, value) in row.iter().enumerate() {
                max_same = max_same.max((value - reference.get(p, q)).abs());
            }
        }
        lag_covariances.push(cov);
    }

    let mut max_cross = 0.0_f64;
    for k1 in 0..k_max {
        for k2 in (k1 + 1)..k_max {
            for p in 0..dim {
                for q in 0..dim {
                    max_cross = max_cross.max(cov_between(k1, k2, p, q).abs());
                }
            }
        }
    }

    let reference_rows = (0..dim)
        .map(|i| (0..dim).map(|j| reference.get(i, j)).collect())
        .collect();
    CltMatrixDiagnostic {
        basis,
        reference: reference_rows,
        lag_covariances,
        max_same_lag_discrepancy: max_same,
        max_cross_lag_covariance: max_cross,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Render the flat CSV form of a report.
///
/// Schema: `family,a,law,test,alpha,metric,value,stderr,R,N,K,seed` with one
/// row per cell record; the seed column is the master seed (cell sub-streams
/// are recorded in the JSON report).
pub fn render_report_csv(report: &ExperimentReport) -> String {
    let mut out = String::from("family,a,law,test,alpha,metric,value,stderr,R,N,K,seed\n");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            cell.family,
            cell.a,
            cell.law,
            cell.test,
            opt(cell.alpha),
            cell.metric,
            opt(cell.value),
            opt(cell.stderr),
            cell.replications,
            cell.n,
            cell.k_max,
            report.master_seed,
        ));
    }
    out
}

/// Write a report as CSV (flat rows) or JSON (full nested structure).
pub fn write_report(report: &ExperimentReport, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => render_report_csv(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| {
                Error::InvalidParameter(format!("report serialization failed: {e}"))
            })?;
            s.push('\n');
            s
        }
    };
    std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Configuration reproducing the published four-table layout: the four
/// alternative models, a in 0.1..0.5, Gaussian and Laplace innovations,
/// N = 100, five lags, one realization per cell, and three tests per series
/// (Ljung-Box on raw values, Ljung-Box on absolute values, whitened L).
pub fn paper_tables_config(master_seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        master_seed,
        replications: 1,
        ..ExperimentConfig::default()
    }
}
