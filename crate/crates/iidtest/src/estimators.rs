//! Empirical moments and auto-/cross-correlations of transformed series.
//!
//! A scalar series X_1..X_N is pushed through m test functions f_1..f_m and
//! the lag-k cross-covariances
//!
//! ```text
//! gamma_k(f, g) = 1/(N-k) * sum_{i=1}^{N-k} (f(X_i) - m(f)) (g(X_{i+k}) - m(g))
//! ```
//!
//! (with full-sample means and the 1/(N-k) lag normalization) are stacked
//! into one vector per lag, in row-major (i, j) order. Correlations divide by
//! the full-sample standard deviations of the transformed columns.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::Series;

/// A real-to-real transform applied to the series before correlating.
#[derive(Clone)]
pub enum TestFunction {
    Identity,
    Abs,
    Square,
    /// sin(freq * x); bounded odd transform for heavy-tailed data.
    Sin {
        freq: f64,
    },
    /// cos(freq * x); bounded even transform for heavy-tailed data.
    Cos {
        freq: f64,
    },
    Custom {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TestFunction::Identity => x,
            TestFunction::Abs => x.abs(),
            TestFunction::Square => x * x,
            TestFunction::Sin { freq } => (freq * x).sin(),
            TestFunction::Cos { freq } => (freq * x).cos(),
            TestFunction::Custom { f, .. } => f(x),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TestFunction::Identity => "id".into(),
            TestFunction::Abs => "abs".into(),
            TestFunction::Square => "square".into(),
            TestFunction::Sin { freq } => format!("sin({freq}x)"),
            TestFunction::Cos { freq } => format!("cos({freq}x)"),
            TestFunction::Custom { name, .. } => name.clone(),
        }
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TestFunction::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestFunction({})", self.name())
    }
}

/// Whether the transform family is declared to have zero contemporaneous
/// cross-correlation (so the identity-covariance limit applies directly) or
/// must be whitened with the estimated contemporaneous matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMode {
    AssumedUncorrelated,
    General,
}

/// Ordered family of test functions with a declared correlation structure.
#[derive(Debug, Clone)]
pub struct TestFunctionSet {
    functions: Vec<TestFunction>,
    pub correlation_mode: CorrelationMode,
}

impl TestFunctionSet {
    pub fn new(functions: Vec<TestFunction>, correlation_mode: CorrelationMode) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::InvalidParameter(
                "a test function family needs at least one function".into(),
            ));
        }
        for (i, f) in functions.iter().enumerate() {
            for g in functions.iter().skip(i + 1) {
                if f.name() == g.name() {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate test function name '{}'",
                        f.name()
                    )));
                }
            }
        }
        Ok(TestFunctionSet {
            functions,
            correlation_mode,
        })
    }

    /// The single identity transform; reduces every statistic to its classic
    /// autocorrelation form.
    pub fn identity() -> Self {
        TestFunctionSet {
            functions: vec![TestFunction::Identity],
            correlation_mode: CorrelationMode::AssumedUncorrelated,
        }
    }

    /// The single absolute-value transform.
    pub fn absolute() -> Self {
        TestFunctionSet {
            functions: vec![TestFunction::Abs],
            correlation_mode: CorrelationMode::AssumedUncorrelated,
        }
    }

    /// The pair (x, |x|); uncorrelated when the underlying distribution is
    /// symmetric with finite fourth moment.
    pub fn id_abs() -> Self {
        TestFunctionSet {
            functions: vec![TestFunction::Identity, TestFunction::Abs],
            correlation_mode: CorrelationMode::AssumedUncorrelated,
        }
    }

    /// The pair (x, x^2); cross-correlation is not assumed away, so whitened
    /// variants are the natural companions.
    pub fn id_square() -> Self {
        TestFunctionSet {
            functions: vec![TestFunction::Identity, TestFunction::Square],
            correlation_mode: CorrelationMode::General,
        }
    }

    /// The bounded pair (sin(ax), cos(ax)) for heavy-tailed data; one odd and
    /// one even function, uncorrelated under symmetry.
    pub fn trig(scale: f64) -> Result<Self> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "trig scale must be positive, got {scale}"
            )));
        }
        Ok(TestFunctionSet {
            functions: vec![
                TestFunction::Sin { freq: scale },
                TestFunction::Cos { freq: scale },
            ],
            correlation_mode: CorrelationMode::AssumedUncorrelated,
        })
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[TestFunction] {
        &self.functions
    }
}

/// Whether stacked entries are covariances or correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    Covariance,
    Correlation,
}

/// Biased (1/N) variance of a transformed column together with a degeneracy
/// flag set when the column is numerically constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedVariance {
    pub value: f64,
    pub degenerate: bool,
}

/// Mean of the transformed column, (1/N) sum f(X_i).
pub fn transformed_mean(x: &Series, f: &TestFunction) -> f64 {
    let values = x.values();
    values.iter().map(|&v| f.eval(v)).sum::<f64>() / values.len() as f64
}

/// Biased variance of the transformed column; flags a numerically constant
/// column as degenerate.
pub fn transformed_variance(x: &Series, f: &TestFunction) -> TransformedVariance {
    let column: Vec<f64> = x.values().iter().map(|&v| f.eval(v)).collect();
    column_variance(&column)
}

fn column_variance(column: &[f64]) -> TransformedVariance {
    let n = column.len() as f64;
    let mean = column.iter().sum::<f64>() / n;
    let value = column.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let scale = column
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1e-300);
    let degenerate = value <= (1e-12 * scale) * (1e-12 * scale);
    TransformedVariance { value, degenerate }
}

/// Lag-k cross-covariance of f and g applied to the same series; k = 0 gives
/// the contemporaneous covariance.
pub fn cross_autocovariance(
    x: &Series,
    f: &TestFunction,
    g: &TestFunction,
    k: usize,
) -> Result<f64> {
    let n = x.len();
    if k > n - 2 {
        return Err(Error::LagOutOfRange {
            lag: k,
            n,
            max: n - 2,
        });
    }
    let fcol: Vec<f64> = x.values().iter().map(|&v| f.eval(v)).collect();
    let gcol: Vec<f64> = x.values().iter().map(|&v| g.eval(v)).collect();
    let fmean = fcol.iter().sum::<f64>() / n as f64;
    let gmean = gcol.iter().sum::<f64>() / n as f64;
    Ok(lagged_covariance(&fcol, fmean, &gcol, gmean, k))
}

fn lagged_covariance(fcol: &[f64], fmean: f64, gcol: &[f64], gmean: f64, k: usize) -> f64 {
    let n = fcol.len();
    let mut sum = 0.0;
    for i in 0..n - k {
        sum += (fcol[i] - fmean) * (gcol[i + k] - gmean);
    }
    sum / (n - k) as f64
}

/// Lag-k cross-correlation gamma_k(f, g) / (s(f) s(g)).
pub fn cross_autocorrelation(
    x: &Series,
    f: &TestFunction,
    g: &TestFunction,
    k: usize,
) -> Result<f64> {
    let vf = transformed_variance(x, f);
    if vf.degenerate {
        return Err(Error::DegenerateVariance { function: f.name() });
    }
    let vg = transformed_variance(x, g);
    if vg.degenerate {
        return Err(Error::DegenerateVariance { function: g.name() });
    }
    Ok(cross_autocovariance(x, f, g, k)? / (vf.value.sqrt() * vg.value.sqrt()))
}

/// All lagged cross-covariance or cross-correlation vectors for lags 1..=K,
/// plus the contemporaneous m x m matrix in the same basis.
///
/// The lag-k vector stores entry (i, j) = (f_i, f_j) at row-major position
/// m*i + j for zero-based i, j.
#[derive(Debug, Clone)]
pub struct LagCorrelationStack {
    basis: Basis,
    m: usize,
    n: usize,
    k_max: usize,
    lag_vectors: Vec<Vec<f64>>,
    contemporaneous: Matrix,
    means: Vec<f64>,
    sds: Vec<f64>,
}

impl LagCorrelationStack {
    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// The stacked vector for lag k (1-based, k <= k_max).
    pub fn lag_vector(&self, k: usize) -> &[f64] {
        assert!(
            k >= 1 && k <= self.k_max,
            "lag {k} outside 1..={}",
            self.k_max
        );
        &self.lag_vectors[k - 1]
    }

    /// Entry (i, j) of the lag-k vector, zero-based function indices.
    pub fn entry(&self, k: usize, i: usize, j: usize) -> f64 {
        self.lag_vector(k)[self.m * i + j]
    }

    /// Sum of squared entries of the lag-k vector.
    pub fn sum_squares(&self, k: usize) -> f64 {
        self.lag_vector(k).iter().map(|v| v * v).sum()
    }

    pub fn contemporaneous(&self) -> &Matrix {
        &self.contemporaneous
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn sds(&self) -> &[f64] {
        &self.sds
    }

    /// Plain nested-array JSON for debugging dumps.
    pub fn debug_json(&self) -> serde_json::Value {
        let lags: Vec<Vec<f64>> = self.lag_vectors.clone();
        let cont: Vec<Vec<f64>> = (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| self.contemporaneous.get(i, j))
                    .collect()
            })
            .collect();
        serde_json::json!({
            "basis": match self.basis { Basis::Covariance => "covariance", Basis::Correlation => "correlation" },
            "m": self.m,
            "n": self.n,
            "k_max": self.k_max,
            "lag_vectors": lags,
            "contemporaneous": cont,
            "means": self.means,
            "sds": self.sds,
        })
    }
}

/// Build the full stack for lags 1..=k_max with a single evaluation of each
/// transformed column.
pub fn build_stack(
    x: &Series,
    funcs: &TestFunctionSet,
    k_max: usize,
    basis: Basis,
) -> Result<LagCorrelationStack> {
    let n = x.len();
    if k_max < 1 {
        return Err(Error::InvalidParameter("max lag must be at least 1".into()));
    }
    if k_max > n - 2 {
        return Err(Error::LagOutOfRange {
            lag: k_max,
            n,
            max: n - 2,
        });
    }
    let m = funcs.len();
    let columns: Vec<Vec<f64>> = funcs
        .functions()
        .iter()
        .map(|f| x.values().iter().map(|&v| f.eval(v)).collect())
        .collect();
    let means: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().sum::<f64>() / n as f64)
        .collect();
    let variances: Vec<TransformedVariance> = columns.iter().map(|c| column_variance(c)).collect();
    if basis == Basis::Correlation {
        if let Some(i) = variances.iter().position(|v| v.degenerate) {
            return Err(Error::DegenerateVariance {
                function: funcs.functions()[i].name(),
            });
        }
    }
    let sds: Vec<f64> = variances.iter().map(|v| v.value.sqrt()).collect();

    let normalizer = |i: usize, j: usize| match basis {
        Basis::Covariance => 1.0,
        Basis::Correlation => sds[i] * sds[j],
    };

    let mut lag_vectors = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut vec_k = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let gamma = lagged_covariance(&columns[i], means[i], &columns[j], means[j], k);
                vec_k[m * i + j] = gamma / normalizer(i, j);
            }
        }
        lag_vectors.push(vec_k);
    }

    let mut contemporaneous = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let value = if i == j {
                // gamma_0(f, f) is exactly the biased variance, so the
                // correlation-basis diagonal is exactly one.
                match basis {
                    Basis::Covariance => variances[i].value,
                    Basis::Correlation => 1.0,
                }
            } else {
                lagged_covariance(&columns[i], means[i], &columns[j], means[j], 0)
                    / normalizer(i, j)
            };
            contemporaneous.set(i, j, value);
            contemporaneous.set(j, i, value);
        }
    }

    Ok(LagCorrelationStack {
        basis,
        m,
        n,
        k_max,
        lag_vectors,
        contemporaneous,
        means,
        sds,
    })
}

/// Sample cumulant of four equal-length columns: E[W'X'Y'Z'] minus the three
/// pair products of centered second moments. Vanishes whenever the four
/// variables split into two independent pairs.
pub fn sample_cumulant4(w: &Series, x: &Series, y: &Series, z: &Series) -> Result<f64> {
    let n = w.len();
    for other in [x, y, z] {
        if other.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: other.len(),
            });
        }
    }
    let center = |s: &Series| -> Vec<f64> {
        let mean = s.values().iter().sum::<f64>() / n as f64;
        s.values().iter().map(|v| v - mean).collect()
    };
    let (wc, xc, yc, zc) = (center(w), center(x), center(y), center(z));
    let mean_prod2 = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(u, v)| u * v).sum::<f64>() / n as f64
    };
    let mut m4 = 0.0;
    for i in 0..n {
        m4 += wc[i] * xc[i] * yc[i] * zc[i];
    }
    m4 /= n as f64;
    Ok(m4
        - mean_prod2(&wc, &xc) * mean_prod2(&yc, &zc)
        - mean_prod2(&wc, &zc) * mean_prod2(&xc, &yc)
        - mean_prod2(&wc, &yc) * mean_prod2(&xc, &zc))
}

/// Biased sample skewness m3 / m2^(3/2); used to warn when the symmetric
/// assumption behind the (x, |x|) family looks doubtful.
pub fn sample_skewness(x: &Series) -> f64 {
    let n = x.len() as f64;
    let mean = x.values().iter().sum::<f64>() / n;
    let m2 = x.values().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = x.values().iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    m3 / m2.powf(1.5)
}
