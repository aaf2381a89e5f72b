//! Portmanteau statistics for the i.i.d. null hypothesis.
//!
//! All four variants aggregate the stacked lag-k cross-correlation vectors
//! and compare against a chi-squared law with m^2 K degrees of freedom:
//!
//! * plain T:     N * sum_k ||C_k||^2
//! * weighted L:  N (N + c) * sum_k ||C_k||^2 / (N - k)
//! * whitened T:  N * sum_k C_k' (S (x) S)^-1 C_k
//! * whitened L:  the weighted version of whitened T
//!
//! where S is the estimated contemporaneous matrix (correlations or
//! covariances). With m = 1 and the identity transform, plain T is exactly
//! the Box-Pierce statistic and weighted L with c = 2 is exactly Ljung-Box.

use serde::{Deserialize, Serialize};

use crate::chi2::ChiSquared;
use crate::error::{Error, Result};
use crate::estimators::{
    build_stack, Basis, CorrelationMode, LagCorrelationStack, TestFunctionSet,
};
use crate::matrix::{kronecker, quadratic_form, spd_inverse};
use crate::series::Series;

/// Significance levels at which every result records a decision.
pub const DEFAULT_LEVELS: [f64; 3] = [0.01, 0.05, 0.10];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantKind {
    PlainT,
    LjungL,
    WhitenedT,
    WhitenedL,
}

/// Which statistic to compute, with the weighting constant for the L forms
/// and the basis for the whitened forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestVariant {
    pub kind: VariantKind,
    /// Weighting constant of the L forms; the classic Ljung-Box choice is 2.
    #[serde(default = "default_c")]
    pub c: f64,
    /// Contemporaneous matrix used by the whitened forms.
    #[serde(default = "default_basis")]
    pub basis: Basis,
}

fn default_c() -> f64 {
    2.0
}

fn default_basis() -> Basis {
    Basis::Correlation
}

impl TestVariant {
    pub fn plain_t() -> Self {
        TestVariant {
            kind: VariantKind::PlainT,
            c: default_c(),
            basis: default_basis(),
        }
    }

    pub fn ljung_l() -> Self {
        TestVariant {
            kind: VariantKind::LjungL,
            c: default_c(),
            basis: default_basis(),
        }
    }

    pub fn whitened_t() -> Self {
        TestVariant {
            kind: VariantKind::WhitenedT,
            c: default_c(),
            basis: default_basis(),
        }
    }

    /// The default "new test": whitened L in the correlation basis with c = 2.
    pub fn whitened_l() -> Self {
        TestVariant {
            kind: VariantKind::WhitenedL,
            c: default_c(),
            basis: default_basis(),
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn is_whitened(&self) -> bool {
        matches!(self.kind, VariantKind::WhitenedT | VariantKind::WhitenedL)
    }

    fn validate(&self) -> Result<()> {
        if !self.c.is_finite() || self.c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "weighting constant c must be positive, got {}",
                self.c
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        let base = match self.kind {
            VariantKind::PlainT => "plain-t",
            VariantKind::LjungL => "ljung-l",
            VariantKind::WhitenedT => "whitened-t",
            VariantKind::WhitenedL => "whitened-l",
        };
        if self.is_whitened() && self.basis == Basis::Covariance {
            format!("{base}-cov")
        } else {
            base.to_string()
        }
    }
}

/// Decision at one significance level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub alpha: f64,
    pub reject: bool,
}

/// Outcome of one portmanteau test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub variant: TestVariant,
    pub m: usize,
    #[serde(rename = "K")]
    pub k_max: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub df: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub rejections: Vec<Rejection>,
}

impl TestResult {
    /// Reject the null at the given level; equivalent to comparing the
    /// statistic to the chi-squared cutoff for that level.
    pub fn rejects_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

fn finalize(
    statistic: f64,
    variant: TestVariant,
    stack: &LagCorrelationStack,
) -> Result<TestResult> {
    // A positive semidefinite form can round to a tiny negative number.
    let statistic = statistic.max(0.0);
    let df = stack.m() * stack.m() * stack.k_max();
    let p_value = ChiSquared::new(df)?.survival(statistic)?;
    let rejections = DEFAULT_LEVELS
        .iter()
        .map(|&alpha| Rejection {
            alpha,
            reject: p_value < alpha,
        })
        .collect();
    Ok(TestResult {
        variant,
        m: stack.m(),
        k_max: stack.k_max(),
        n: stack.n(),
        df,
        statistic,
        p_value,
        rejections,
    })
}

fn require_uncorrelated(funcs: &TestFunctionSet) -> Result<()> {
    if funcs.correlation_mode != CorrelationMode::AssumedUncorrelated {
        return Err(Error::RequiresUncorrelated);
    }
    Ok(())
}

/// Plain statistic N * sum of squared stacked correlations.
pub fn statistic_plain_t(x: &Series, funcs: &TestFunctionSet, k_max: usize) -> Result<TestResult> {
    require_uncorrelated(funcs)?;
    let stack = build_stack(x, funcs, k_max, Basis::Correlation)?;
    let n = stack.n() as f64;
    let statistic = n * (1..=k_max).map(|k| stack.sum_squares(k)).sum::<f64>();
    finalize(statistic, TestVariant::plain_t(), &stack)
}

/// Weighted statistic N (N + c) * sum_k ||C_k||^2 / (N - k).
pub fn statistic_ljung_l(
    x: &Series,
    funcs: &TestFunctionSet,
    k_max: usize,
    c: f64,
) -> Result<TestResult> {
    require_uncorrelated(funcs)?;
    let variant = TestVariant::ljung_l().with_c(c);
    variant.validate()?;
    let stack = build_stack(x, funcs, k_max, Basis::Correlation)?;
    let n = stack.n() as f64;
    let statistic = n
        * (n + c)
        * (1..=k_max)
            .map(|k| stack.sum_squares(k) / (n - k as f64))
            .sum::<f64>();
    finalize(statistic, variant, &stack)
}

/// Whitened statistic sum_k w_k C_k' (S (x) S)^-1 C_k with S the estimated
/// contemporaneous matrix of the requested basis.
pub fn statistic_whitened(
    x: &Series,
    funcs: &TestFunctionSet,
    k_max: usize,
    variant: TestVariant,
) -> Result<TestResult> {
    if !variant.is_whitened() {
        return Err(Error::InvalidParameter(format!(
            "statistic_whitened called with non-whitened variant {:?}",
            variant.kind
        )));
    }
    variant.validate()?;
    let stack = build_stack(x, funcs, k_max, variant.basis)?;
    let inverse = spd_inverse(stack.contemporaneous()).map_err(|err| match err {
        Error::NotPositiveDefinite { min_eigenvalue } => Error::WhiteningFailure { min_eigenvalue },
        other => other,
    })?;
    let big_inverse = kronecker(&inverse, &inverse);
    let n = stack.n() as f64;
    let mut statistic = 0.0;
    for k in 1..=k_max {
        let form = quadratic_form(stack.lag_vector(k), &big_inverse)?;
        let weight = match variant.kind {
            VariantKind::WhitenedT => n,
            VariantKind::WhitenedL => n * (n + variant.c) / (n - k as f64),
            _ => unreachable!(),
        };
        statistic += weight * form;
    }
    finalize(statistic, variant, &stack)
}

/// Dispatch on the variant kind.
pub fn run_variant(
    x: &Series,
    funcs: &TestFunctionSet,
    k_max: usize,
    variant: TestVariant,
) -> Result<TestResult> {
    match variant.kind {
        VariantKind::PlainT => statistic_plain_t(x, funcs, k_max),
        VariantKind::LjungL => statistic_ljung_l(x, funcs, k_max, variant.c),
        VariantKind::WhitenedT | VariantKind::WhitenedL => {
            statistic_whitened(x, funcs, k_max, variant)
        }
    }
}

/// Box-Pierce: the plain statistic with m = 1 and the identity transform.
pub fn classic_box_pierce(x: &Series, k_max: usize) -> Result<TestResult> {
    statistic_plain_t(x, &TestFunctionSet::identity(), k_max)
}

/// Ljung-Box: the weighted statistic with m = 1, identity transform, c = 2.
pub fn classic_ljung_box(x: &Series, k_max: usize) -> Result<TestResult> {
    statistic_ljung_l(x, &TestFunctionSet::identity(), k_max, 2.0)
}

/// Ljung-Box applied to |X|, the classic check for heteroscedastic
/// dependence that raw autocorrelations miss.
pub fn ljung_box_abs(x: &Series, k_max: usize) -> Result<TestResult> {
    statistic_ljung_l(x, &TestFunctionSet::absolute(), k_max, 2.0)
}
