//! Logistic-map sequence generation and the input-weight matrix built from it.
//!
//! The map `z_k = mu * z_{k-1} * (1 - z_{k-1})` is iterated in 64-bit floating
//! point, strictly in order. Any orbit value that leaves the open unit interval
//! is reported as an error rather than clamped, so a given `(z1, mu)` pair
//! always names the same weights or none at all.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Lower edge of the chaotic regime for `mu` (exclusive).
pub const MU_CHAOTIC_MIN: f64 = 3.56995;
pub const DEFAULT_Z1: f64 = 0.6;
pub const DEFAULT_MU: f64 = 3.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaosConfig {
    pub z1: f64,
    pub mu: f64,
}

impl Default for ChaosConfig {
    fn default() -> Self {
        Self {
            z1: DEFAULT_Z1,
            mu: DEFAULT_MU,
        }
    }
}

impl ChaosConfig {
    /// Builds a validated config.
    pub fn new(z1: f64, mu: f64) -> Result<Self> {
        let cfg = Self { z1, mu };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z1 > 0.0 && self.z1 < 1.0) {
            return Err(Error::InvalidChaosParam(format!(
                "z1 = {} must lie in (0, 1)",
                self.z1
            )));
        }
        if !(self.mu > MU_CHAOTIC_MIN && self.mu <= 4.0) {
            return Err(Error::InvalidChaosParam(format!(
                "mu = {} must lie in ({MU_CHAOTIC_MIN}, 4]",
                self.mu
            )));
        }
        Ok(())
    }
}

/// Returns the first `n` orbit values, starting with `z1` itself.
pub fn logistic_sequence(config: ChaosConfig, n: usize) -> Result<Vec<f64>> {
    config.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sequence length must be at least 1".into(),
        ));
    }
    let mut seq = Vec::with_capacity(n);
    let mut z = config.z1;
    seq.push(z);
    for k in 1..n {
        z = config.mu * z * (1.0 - z);
        if !(z > 0.0 && z < 1.0) {
            return Err(Error::InvalidChaosParam(format!(
                "orbit of z1 = {}, mu = {} leaves (0, 1) at element {}",
                config.z1,
                config.mu,
                k + 1
            )));
        }
        seq.push(z);
    }
    Ok(seq)
}

/// K×L input weights filled from the logistic orbit.
///
/// Row `i` holds orbit elements `i*L .. (i+1)*L`, i.e. the matrix is the
/// orbit prefix of length `K*L` laid out row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    values: Matrix,
    source_config: ChaosConfig,
}

impl WeightMatrix {
    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn source_config(&self) -> ChaosConfig {
        self.source_config
    }

    /// Input feature count K.
    pub fn inputs(&self) -> usize {
        self.values.rows()
    }

    /// Hidden neuron count L.
    pub fn hidden(&self) -> usize {
        self.values.cols()
    }

    /// Reassembles a weight matrix from stored values, checking that they are
    /// exactly what `source_config` generates.
    pub fn from_parts(values: Matrix, source_config: ChaosConfig) -> Result<Self> {
        let regenerated = build_weight_matrix(source_config, values.rows(), values.cols())?;
        if regenerated.values != values {
            return Err(Error::InvalidArgument(
                "stored input weights do not match their logistic-map parameters".into(),
            ));
        }
        Ok(regenerated)
    }
}

pub fn build_weight_matrix(
    config: ChaosConfig,
    inputs: usize,
    hidden: usize,
) -> Result<WeightMatrix> {
    if inputs == 0 || hidden == 0 {
        return Err(Error::InvalidArgument(format!(
            "weight matrix needs K >= 1 and L >= 1, got {inputs}x{hidden}"
        )));
    }
    let seq = logistic_sequence(config, inputs * hidden)?;
    Ok(WeightMatrix {
        values: Matrix::from_vec(inputs, hidden, seq)?,
        source_config: config,
    })
}
