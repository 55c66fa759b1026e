use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SQRT_3;

/// `2π / (3√3)`, the exclusion-disk correction shared by both rates.
const DISK_TERM: f64 = 2.0 * PI / (3.0 * SQRT_3);

fn check_rcr(mu: f64) -> Result<()> {
    if mu > 2.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "RCR",
            expected: "finite and greater than 2",
            value: mu,
        })
    }
}

/// Acceptance probability of the Cartesian sampler as a function of the RCR.
pub fn acceptance_rate_cartesian(mu: f64) -> Result<f64> {
    check_rcr(mu)?;
    Ok((mu * mu - DISK_TERM) / (mu * (2.0 * mu - 1.0)))
}

/// Acceptance probability of the radial sampler.
pub fn acceptance_rate_radial(mu: f64) -> Result<f64> {
    check_rcr(mu)?;
    Ok(3.0 * (mu * mu - DISK_TERM) / (2.0 * PI * mu * (mu - 1.0)))
}

/// RCR at which the Cartesian acceptance rate peaks (≈ 4.572).
pub fn optimal_rcr() -> f64 {
    (4.0 * PI + (2.0 * PI * (8.0 * PI - 3.0 * SQRT_3)).sqrt()) / (3.0 * SQRT_3)
}

/// RCR at which the radial and Cartesian acceptance rates coincide (≈ 11.594).
pub fn crossover_rcr() -> f64 {
    (2.0 * PI - 3.0) / (2.0 * (PI - 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArEstimatorStats {
    pub mean: f64,
    pub variance: f64,
}

/// Mean and variance of `n_S / n_T` when `n_T` proposals are made.
pub fn ar_estimator_stats(mu: f64, n_total: u64) -> Result<ArEstimatorStats> {
    check_total(n_total)?;
    let p = acceptance_rate_cartesian(mu)?;
    Ok(ArEstimatorStats {
        mean: p,
        variance: p * (1.0 - p) / n_total as f64,
    })
}

/// The estimator variance written directly in `μ`, without forming `p_A`.
pub fn ar_estimator_variance_closed_form(mu: f64, n_total: u64) -> Result<f64> {
    check_rcr(mu)?;
    check_total(n_total)?;
    let shift = mu - 4.0 * PI / (3.0 * SQRT_3);
    let scale = mu * (2.0 * mu - 1.0);
    Ok((1.0 - (shift * shift) / (scale * scale)) / (4.0 * n_total as f64))
}

fn check_total(n_total: u64) -> Result<()> {
    if n_total == 0 {
        Err(Error::InvalidParameter {
            name: "n_total",
            expected: "at least 1",
            value: 0.0,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Radial,
    Cartesian,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Radial => "radial",
            Self::Cartesian => "cartesian",
        })
    }
}

/// Radial sampling up to and including the crossover RCR, Cartesian beyond.
pub fn choose_strategy(mu: f64) -> Result<Strategy> {
    check_rcr(mu)?;
    Ok(if mu <= crossover_rcr() {
        Strategy::Radial
    } else {
        Strategy::Cartesian
    })
}

impl Strategy {
    pub fn acceptance_rate(&self, mu: f64) -> Result<f64> {
        match self {
            Self::Radial => acceptance_rate_radial(mu),
            Self::Cartesian => acceptance_rate_cartesian(mu),
        }
    }
}
