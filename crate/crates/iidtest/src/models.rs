//! Seeded innovation laws and the four simulated alternatives to i.i.d.:
//! AR(1), MA(1), stochastic volatility, and GARCH(1,1).
//!
//! Every generator is a pure function of a [`ModelSpec`] and a [`SeedSpec`];
//! the same pair reproduces the identical series bit for bit, and distinct
//! stream indices give independent streams for parallel replication.

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Series;

/// SplitMix64 finalizer; mixes seed material into well-distributed words.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Master seed plus a stream index selecting one of many independent
/// sub-streams derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        SeedSpec {
            master_seed,
            stream_index,
        }
    }

    fn derived(&self) -> u64 {
        mix64(mix64(self.master_seed) ^ self.stream_index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Deterministic generator for this (master, stream) pair.
    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.derived())
    }

    /// Child seed space rooted at this stream, for models that need several
    /// independent streams per replication.
    pub fn child(&self, salt: u64) -> SeedSpec {
        SeedSpec {
            master_seed: self.derived(),
            stream_index: salt,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnovationKind {
    Gaussian,
    Laplace,
}

/// Zero-mean innovation law. Gaussian draws are always standard; Laplace in
/// standardized mode has unit variance (scale 1/sqrt(2)), in literal mode the
/// density 0.5 exp(-|z|) with variance 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnovationLaw {
    pub kind: InnovationKind,
    pub standardized: bool,
}

impl InnovationLaw {
    pub fn gaussian() -> Self {
        InnovationLaw {
            kind: InnovationKind::Gaussian,
            standardized: true,
        }
    }

    pub fn laplace() -> Self {
        InnovationLaw {
            kind: InnovationKind::Laplace,
            standardized: true,
        }
    }

    pub fn laplace_literal() -> Self {
        InnovationLaw {
            kind: InnovationKind::Laplace,
            standardized: false,
        }
    }

    pub fn variance(&self) -> f64 {
        match (self.kind, self.standardized) {
            (InnovationKind::Gaussian, _) => 1.0,
            (InnovationKind::Laplace, true) => 1.0,
            (InnovationKind::Laplace, false) => 2.0,
        }
    }

    pub fn sample(&self, rng: &mut ChaCha12Rng) -> f64 {
        match self.kind {
            InnovationKind::Gaussian => rng.sample(StandardNormal),
            InnovationKind::Laplace => {
                let scale = if self.standardized {
                    std::f64::consts::FRAC_1_SQRT_2
                } else {
                    1.0
                };
                // Inverse CDF of the Laplace distribution on an open (0, 1)
                // uniform.
                let u: f64 = rng.sample(rand::distr::Open01);
                if u < 0.5 {
                    scale * (2.0 * u).ln()
                } else {
                    -scale * (2.0 * (1.0 - u)).ln()
                }
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match (self.kind, self.standardized) {
            (InnovationKind::Gaussian, _) => "gaussian",
            (InnovationKind::Laplace, true) => "laplace",
            (InnovationKind::Laplace, false) => "laplace-literal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelFamily {
    Ar1,
    Ma1,
    Sv,
    Garch11,
}

impl ModelFamily {
    pub fn label(&self) -> &'static str {
        match self {
            ModelFamily::Ar1 => "ar1",
            ModelFamily::Ma1 => "ma1",
            ModelFamily::Sv => "sv",
            ModelFamily::Garch11 => "garch",
        }
    }
}

/// Coefficients of the variance recursion V_t^2 = a0 + b X_{t-1}^2 + c V_{t-1}^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GarchCoeffs {
    pub a0: f64,
    pub b: f64,
    pub c: f64,
}

impl GarchCoeffs {
    pub fn new(a0: f64, b: f64, c: f64) -> Result<Self> {
        if !(a0 > 0.0 && b > 0.0 && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "GARCH coefficients must be positive, got ({a0}, {b}, {c})"
            )));
        }
        if b + c >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "GARCH is not covariance stationary: b + c = {} must be < 1",
                b + c
            )));
        }
        Ok(GarchCoeffs { a0, b, c })
    }

    /// Single-parameter form with all three coefficients equal to a/3, so
    /// their sum equals the dependence parameter a shared with the other
    /// models.
    pub fn equal_thirds(a: f64) -> Result<Self> {
        check_a(a)?;
        GarchCoeffs::new(a / 3.0, a / 3.0, a / 3.0)
    }

    pub fn unconditional_variance(&self) -> f64 {
        self.a0 / (1.0 - self.b - self.c)
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "model parameter a must lie in (0, 1), got {a}"
        )));
    }
    Ok(())
}

/// One of the four simulated models with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: ModelFamily,
    /// Dependence parameter in (0, 1); for GARCH it equals b + c + a0 of the
    /// equal-coefficient form, i.e. the sum of the three coefficients.
    pub a: f64,
    /// Explicit GARCH coefficients; `None` selects the equal-thirds form
    /// derived from `a`.
    pub garch_coeffs: Option<GarchCoeffs>,
    pub innovation: InnovationLaw,
    pub length: usize,
    /// Extra leading observations simulated and discarded.
    pub burn_in: usize,
}

impl ModelSpec {
    fn base(family: ModelFamily, a: f64, innovation: InnovationLaw, length: usize) -> Result<Self> {
        check_a(a)?;
        if length < 2 {
            return Err(Error::SeriesTooShort {
                needed: 2,
                got: length,
            });
        }
        Ok(ModelSpec {
            family,
            a,
            garch_coeffs: None,
            innovation,
            length,
            burn_in: 0,
        })
    }

    pub fn ar1(a: f64, innovation: InnovationLaw, length: usize) -> Result<Self> {
        Self::base(ModelFamily::Ar1, a, innovation, length)
    }

    pub fn ma1(a: f64, innovation: InnovationLaw, length: usize) -> Result<Self> {
        Self::base(ModelFamily::Ma1, a, innovation, length)
    }

    pub fn sv(a: f64, innovation: InnovationLaw, length: usize) -> Result<Self> {
        Self::base(ModelFamily::Sv, a, innovation, length)
    }

    /// GARCH(1,1) in the single-parameter form with coefficients (a/3, a/3, a/3).
    pub fn garch_equal(a: f64, innovation: InnovationLaw, length: usize) -> Result<Self> {
        Self::base(ModelFamily::Garch11, a, innovation, length)
    }

    /// GARCH(1,1) with explicit coefficients; the dependence parameter is
    /// recorded as their sum.
    pub fn garch(coeffs: GarchCoeffs, innovation: InnovationLaw, length: usize) -> Result<Self> {
        let mut spec = Self::base(
            ModelFamily::Garch11,
            (coeffs.a0 + coeffs.b + coeffs.c).min(0.999_999),
            innovation,
            length,
        )?;
        spec.garch_coeffs = Some(coeffs);
        Ok(spec)
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_a(self.a)?;
        if self.length < 2 {
            return Err(Error::SeriesTooShort {
                needed: 2,
                got: self.length,
            });
        }
        if let Some(c) = self.garch_coeffs {
            // Reconstruct to re-run the positivity and stationarity checks.
            GarchCoeffs::new(c.a0, c.b, c.c)?;
        }
        Ok(())
    }

    /// The effective GARCH coefficients (explicit or equal-thirds).
    pub fn effective_garch_coeffs(&self) -> Result<GarchCoeffs> {
        match self.garch_coeffs {
            Some(c) => GarchCoeffs::new(c.a0, c.b, c.c),
            None => GarchCoeffs::equal_thirds(self.a),
        }
    }
}

/// Draw n innovations from the law under the given seed.
pub fn draw_innovations(seed: &SeedSpec, law: InnovationLaw, n: usize) -> Result<Series> {
    if n < 2 {
        return Err(Error::SeriesTooShort { needed: 2, got: n });
    }
    let mut rng = seed.rng();
    Series::new((0..n).map(|_| law.sample(&mut rng)).collect())
}

/// X_t = a X_{t-1} + Z_t starting from X_0 = 0.
fn ar1_recursion(a: f64, innovations: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(innovations.len());
    let mut prev = 0.0;
    for &z in innovations {
        prev = a * prev + z;
        out.push(prev);
    }
    out
}

/// X_t = Z_t + a Z_{t-1}; `innovations[0]` plays the role of Z_0.
fn ma1_recursion(a: f64, innovations: &[f64]) -> Vec<f64> {
    innovations.windows(2).map(|w| w[1] + a * w[0]).collect()
}

/// X_t = exp(V_t) Z_t with log-volatility V_t = a V_{t-1} + W_t, V_0 = 0.
/// Returns the observations and the volatility path exp(V_t).
fn sv_recursion(a: f64, innovations: &[f64], vol_innovations: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut x = Vec::with_capacity(innovations.len());
    let mut vol = Vec::with_capacity(innovations.len());
    let mut v = 0.0;
    for (&z, &w) in innovations.iter().zip(vol_innovations) {
        v = a * v + w;
        let sigma = v.exp();
        vol.push(sigma);
        x.push(sigma * z);
    }
    (x, vol)
}

/// X_t = V_t Z_t with V_t^2 = a0 + b X_{t-1}^2 + c V_{t-1}^2, started from
/// X_0 = 0 and V_0^2 at the unconditional variance. Returns observations and
/// the volatility path V_t.
fn garch_recursion(coeffs: GarchCoeffs, innovations: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut x = Vec::with_capacity(innovations.len());
    let mut vol = Vec::with_capacity(innovations.len());
    let mut v2 = coeffs.unconditional_variance();
    let mut x_prev = 0.0;
    for &z in innovations {
        v2 = coeffs.a0 + coeffs.b * x_prev * x_prev + coeffs.c * v2;
        let v = v2.sqrt();
        vol.push(v);
        x_prev = v * z;
        x.push(x_prev);
    }
    (x, vol)
}

/// Simulate the model, returning the series and, for the heteroscedastic
/// families, the volatility path.
pub fn simulate_with_volatility(
    spec: &ModelSpec,
    seed: &SeedSpec,
) -> Result<(Series, Option<Vec<f64>>)> {
    spec.validate()?;
    let total = spec.length + spec.burn_in;
    let (mut values, mut volatility) = match spec.family {
        ModelFamily::Ar1 => {
            let z = raw_innovations(&seed.child(0), spec.innovation, total);
            (ar1_recursion(spec.a, &z), None)
        }
        ModelFamily::Ma1 => {
            // One extra leading draw serves as Z_0.
            let z = raw_innovations(&seed.child(0), spec.innovation, total + 1);
            (ma1_recursion(spec.a, &z), None)
        }
        ModelFamily::Sv => {
            let z = raw_innovations(&seed.child(0), spec.innovation, total);
            let w = raw_innovations(&seed.child(1), InnovationLaw::gaussian(), total);
            let (x, vol) = sv_recursion(spec.a, &z, &w);
            (x, Some(vol))
        }
        ModelFamily::Garch11 => {
            let coeffs = spec.effective_garch_coeffs()?;
            let z = raw_innovations(&seed.child(0), spec.innovation, total);
            let (x, vol) = garch_recursion(coeffs, &z);
            (x, Some(vol))
        }
    };
    if spec.burn_in > 0 {
        values.drain(..spec.burn_in);
        if let Some(v) = volatility.as_mut() {
            v.drain(..spec.burn_in);
        }
    }
    Ok((Series::new(values)?, volatility))
}

/// Simulate the model under the given seed.
pub fn simulate(spec: &ModelSpec, seed: &SeedSpec) -> Result<Series> {
    simulate_with_volatility(spec, seed).map(|(series, _)| series)
}

fn raw_innovations(seed: &SeedSpec, law: InnovationLaw, n: usize) -> Vec<f64> {
    let mut rng = seed.rng();
    (0..n).map(|_| law.sample(&mut rng)).collect()
}
