use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("RCR must exceed 2 (cell radius {cell_radius_m} m / close-in {close_in_m} m = {rcr})")]
    RcrTooSmall {
        cell_radius_m: f64,
        close_in_m: f64,
        rcr: f64,
    },

    #[error("{name} must be {expected}, got {value}")]
    InvalidParameter {
        name: &'static str,
        expected: &'static str,
        value: f64,
    },

    #[error("{name} = {value} is outside the domain [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("shadowing standard deviation is zero; use the unshadowed path-loss density")]
    DegenerateShadowing,

    #[error("cannot build an estimate from an empty sample set")]
    EmptySamples,

    #[error("quadrature did not converge on [{a}, {b}]: estimate {estimate}, error {error}")]
    Quadrature {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
    },
}

pub(crate) fn check_domain(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::Domain { name, value, lo, hi })
    }
}
