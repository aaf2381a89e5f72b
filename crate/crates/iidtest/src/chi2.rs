//! Chi-squared survival function and quantile.
//!
//! The survival function is the regularized upper incomplete gamma function
//! Q(df/2, x/2), computed by a power series for small arguments and by a
//! continued fraction otherwise. The quantile inverts it by bisection.

use crate::error::{Error, Result};

/// Chi-squared distribution with a positive integer number of degrees of
/// freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiSquared {
    df: usize,
}

impl ChiSquared {
    pub fn new(df: usize) -> Result<Self> {
        if df == 0 {
            return Err(Error::InvalidParameter(
                "degrees of freedom must be at least 1".into(),
            ));
        }
        Ok(ChiSquared { df })
    }

    pub fn df(&self) -> usize {
        self.df
    }

    /// Upper-tail probability P(W > x).
    pub fn survival(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::NegativeArgument(x));
        }
        Ok(upper_regularized_gamma(self.df as f64 / 2.0, x / 2.0))
    }

    /// The cutoff u with P(W > u) = p, found by bisection on the survival
    /// function.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        let df = self.df as f64;
        let mut lo = 0.0_f64;
        // Mean plus ten standard deviations covers all but extreme p; double
        // until the survival there drops below p.
        let mut hi = df + 10.0 * (2.0 * df).sqrt() + 10.0;
        while self.survival(hi)? > p {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.survival(mid)? > p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * (1.0 + hi) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

const MAX_ITER: usize = 500;
const EPS: f64 = 1e-16;

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
fn upper_regularized_gamma(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - lower_gamma_series(a, x)
    } else {
        upper_gamma_continued_fraction(a, x)
    }
}

/// Regularized lower incomplete gamma P(a, x) by power series; converges
/// quickly for x < a + 1.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    for n in 1..MAX_ITER {
        term *= x / (a + n as f64);
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * (a * x.ln() - x - ln_gamma(a)).exp()
}

/// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
/// fraction; converges quickly for x >= a + 1.
fn upper_gamma_continued_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    (a * x.ln() - x - ln_gamma(a)).exp() * h
}

/// Natural log of the gamma function.
///
/// Arguments here are always half-integers (df/2), so for moderate values the
/// recursion down to Gamma(1) = 1 or Gamma(1/2) = sqrt(pi) is both exact in
/// structure and cheap. Larger arguments use the Stirling series.
fn ln_gamma(a: f64) -> f64 {
    debug_assert!(a > 0.0);
    if a <= 500.0 {
        let mut acc = 0.0;
        let mut z = a;
        while z > 1.5 {
            z -= 1.0;
            acc += z.ln();
        }
        // z is now 1.0 or 0.5 for half-integer inputs; lnGamma(1) = 0.
        let base = if (z - 0.5).abs() < 1e-12 {
            0.5 * std::f64::consts::PI.ln()
        } else if (z - 1.0).abs() < 1e-12 {
            0.0
        } else {
            // Non-half-integer fallback: shift into the Stirling range.
            return ln_gamma_stirling(z + 500.0)
                - (0..500).map(|i| (z + i as f64).ln()).sum::<f64>()
                + acc;
        };
        acc + base
    } else {
        ln_gamma_stirling(a)
    }
}

fn ln_gamma_stirling(a: f64) -> f64 {
    let inv = 1.0 / a;
    let inv2 = inv * inv;
    (a - 0.5) * a.ln() - a
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(x: f64, df: usize) -> f64 {
        ChiSquared::new(df).unwrap().survival(x).unwrap()
    }

    fn quantile(p: f64, df: usize) -> f64 {
        ChiSquared::new(df).unwrap().quantile(p).unwrap()
    }

    #[test]
    fn zero_df_rejected() {
        assert!(ChiSquared::new(0).is_err());
    }

    #[test]
    fn survival_at_zero_is_one() {
        for df in [1, 2, 5, 20, 100] {
            assert_eq!(sf(0.0, df), 1.0);
        }
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(ChiSquared::new(3).unwrap().survival(-0.1).is_err());
        assert!(ChiSquared::new(3).unwrap().survival(f64::NAN).is_err());
    }

    #[test]
    fn df2_has_exponential_tail() {
        // With two degrees of freedom the survival is exactly exp(-x/2).
        let x = 2.0 * 20.0_f64.ln();
        assert!((sf(x, 2) - 0.05).abs() < 1e-12);
        assert!((sf(3.0, 2) - (-1.5_f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn survival_matches_reference_values() {
        // Reference values computed with scipy.stats.chi2.sf.
        let cases = [
            (0.5, 1, 0.479_500_122_186_953_37),
            (3.0, 2, 0.223_130_160_148_429_82),
            (11.070_497_693_516_4, 5, 0.05),
            (3.940_299_136_119_06, 10, 0.95),
            (31.410_432_844_230_918, 20, 0.05),
            (61.656_233_811_764_08, 45, 0.049_999_996_156_435_04),
            (60.3915, 80, 0.949_999_787_134_751_3),
        ];
        for (x, df, expected) in cases {
            assert!(
                (sf(x, df) - expected).abs() <= 1e-10,
                "sf({x}, {df}) = {} != {expected}",
                sf(x, df)
            );
        }
    }

    #[test]
    fn survival_df20_spec_point() {
        assert!((sf(31.4104, 20) - 0.05).abs() < 1e-4);
    }

    #[test]
    fn quantile_closed_form_df2() {
        assert!((quantile(0.05, 2) - 2.0 * 20.0_f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn quantile_matches_reference_values() {
        // Reference values computed with scipy.stats.chi2.isf.
        let cases = [
            (0.5, 1, 0.454_936_423_119_572_4),
            (0.95, 5, 1.145_476_226_061_769_7),
            (0.975, 10, 3.246_972_780_236_842),
            (0.05, 3, 7.814_727_903_251_178),
            (0.05, 20, 31.410_432_844_230_92),
            (0.05, 45, 61.656_233_376_279_57),
        ];
        for (p, df, expected) in cases {
            assert!(
                (quantile(p, df) - expected).abs() <= 1e-6,
                "quantile({p}, {df}) = {} != {expected}",
                quantile(p, df)
            );
        }
    }

    #[test]
    fn quantile_rejects_bad_probability() {
        let d = ChiSquared::new(4).unwrap();
        assert!(d.quantile(0.0).is_err());
        assert!(d.quantile(1.0).is_err());
        assert!(d.quantile(-0.3).is_err());
        assert!(d.quantile(1.5).is_err());
    }

    #[test]
    fn survival_quantile_roundtrip() {
        for df in [1, 2, 3, 5, 10, 20, 45, 120] {
            for p in [0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999] {
                let u = quantile(p, df);
                assert!(
                    (sf(u, df) - p).abs() <= 1e-8,
                    "roundtrip failed at df={df}, p={p}"
                );
            }
        }
    }

    #[test]
    fn survival_is_monotone_decreasing() {
        for df in [1, 4, 20, 75] {
            let mut prev = 1.0;
            for i in 1..200 {
                let x = i as f64 * 0.7;
                let s = sf(x, df);
                assert!(s <= prev, "survival increased at df={df}, x={x}");
                prev = s;
            }
        }
    }
}
