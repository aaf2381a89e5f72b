//! Ordered real-valued sample under test.

use crate::error::{Error, Result};

/// A finite, ordered sample of at least two real observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
}

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::SeriesTooShort {
                needed: 2,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Series { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Element-wise absolute value, e.g. for testing |X| for white noise.
    pub fn abs(&self) -> Series {
        Series {
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    /// Element-wise scaling by a nonzero factor.
    pub fn scaled(&self, factor: f64) -> Result<Series> {
        Series::new(self.values.iter().map(|v| v * factor).collect())
    }

    /// Element-wise shift by a constant.
    pub fn shifted(&self, offset: f64) -> Result<Series> {
        Series::new(self.values.iter().map(|v| v + offset).collect())
    }
}

impl AsRef<[f64]> for Series {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}
