//! Tests for the hypothesis that a time series is independent and identically
//! distributed, not merely white noise.
//!
//! Classic portmanteau tests (Box-Pierce, Ljung-Box) aggregate squared sample
//! autocorrelations and therefore detect only linear dependence. A series can
//! have zero autocorrelation at every lag and still fail to be i.i.d., the
//! typical culprit being heteroscedasticity: stochastic-volatility and GARCH
//! sequences are white noise whose absolute values are strongly correlated.
//!
//! This crate combines the autocorrelations of several transformed copies of
//! one series, for example `x` and `|x|`, into a single chi-squared statistic.
//! Four variants are provided: a plain sum of squares, a Ljung-Box-style
//! small-sample weighting, and whitened forms of both that estimate and remove
//! the contemporaneous correlation between the transforms via a Kronecker
//! inverse square root. With one identity transform the plain and weighted
//! statistics reduce exactly to Box-Pierce and Ljung-Box.
//!
//! The crate also ships deterministic seeded simulators for AR(1), MA(1),
//! stochastic-volatility and GARCH(1,1) alternatives, and a Monte Carlo
//! harness for size/power studies over those models. The `iidtest` binary
//! exposes all of this on the command line.

pub mod chi2;
pub mod cli;
pub mod csvio;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod matrix;
pub mod models;
pub mod portmanteau;
pub mod series;

pub use error::{Error, Result};
pub use series::Series;
