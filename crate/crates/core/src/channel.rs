//! Log-distance path loss, shadowing parameters and the density of the mean
//! path loss seen by a uniformly placed node.

use std::f64::consts::{LN_10, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{NetworkGeometry, SQRT_3};

/// `w(r) = α + β log10(r)`, with `r` in metres and `w` in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPathLoss")]
pub struct PathLossParams {
    alpha_db: f64,
    beta_db: f64,
}

#[derive(Deserialize)]
struct RawPathLoss {
    alpha_db: f64,
    beta_db: f64,
}

impl TryFrom<RawPathLoss> for PathLossParams {
    type Error = Error;

    fn try_from(raw: RawPathLoss) -> Result<Self> {
        Self::new(raw.alpha_db, raw.beta_db)
    }
}

impl PathLossParams {
    pub fn new(alpha_db: f64, beta_db: f64) -> Result<Self> {
        if !alpha_db.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                expected: "finite",
                value: alpha_db,
            });
        }
        if !(beta_db.is_finite() && beta_db > 0.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                expected: "positive and finite",
                value: beta_db,
            });
        }
        Ok(Self { alpha_db, beta_db })
    }

    pub fn alpha_db(&self) -> f64 {
        self.alpha_db
    }

    pub fn beta_db(&self) -> f64 {
        self.beta_db
    }

    /// Path-loss exponent `β / 10`.
    pub fn exponent(&self) -> f64 {
        self.beta_db / 10.0
    }

    /// False when the exponent is at most 1, which is outside the usual
    /// physical range. The densities stay valid for any positive `β`.
    pub fn has_physical_exponent(&self) -> bool {
        self.exponent() > 1.0
    }

    pub fn mean_path_loss_db(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter {
                name: "distance",
                expected: "positive",
                value: r,
            });
        }
        Ok(self.alpha_db + self.beta_db * r.log10())
    }

    /// Distance at which the mean path loss equals `w`.
    pub fn inverse_distance(&self, w: f64) -> f64 {
        10f64.powf((w - self.alpha_db) / self.beta_db)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawShadowing")]
pub struct ShadowingParams {
    sigma_psi_db: f64,
}

#[derive(Deserialize)]
struct RawShadowing {
    sigma_psi_db: f64,
}

impl TryFrom<RawShadowing> for ShadowingParams {
    type Error = Error;

    fn try_from(raw: RawShadowing) -> Result<Self> {
        Self::new(raw.sigma_psi_db)
    }
}

impl ShadowingParams {
    pub fn new(sigma_psi_db: f64) -> Result<Self> {
        if !(sigma_psi_db.is_finite() && sigma_psi_db >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                expected: "nonnegative and finite",
                value: sigma_psi_db,
            });
        }
        Ok(Self { sigma_psi_db })
    }

    pub fn sigma_psi_db(&self) -> f64 {
        self.sigma_psi_db
    }

    pub fn is_degenerate(&self) -> bool {
        self.sigma_psi_db == 0.0
    }
}

/// Mean path loss at the three distances where the densities change form:
/// `r0`, `√3 L / 2` and `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakpoints {
    pub w0: f64,
    pub wi: f64,
    pub wl: f64,
}

/// IEEE 802.20 urban macrocell (COST-231 Hata at 1.9 GHz).
pub mod ieee_802_20 {
    pub const ALPHA_DB: f64 = 34.5;
    pub const BETA_DB: f64 = 35.0;
    pub const SIGMA_PSI_DB: f64 = 10.0;
    pub const CLOSE_IN_M: f64 = 35.0;
    pub const CELL_RADIUS_MIN_M: f64 = 600.0;
    pub const CELL_RADIUS_MAX_M: f64 = 3500.0;
    pub const CELL_RADIUS_SWEEP_M: [f64; 4] = [600.0, 1500.0, 2500.0, 3500.0];
}

/// Complete parameter set `{α, β, σΨ, r0, L}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub geometry: NetworkGeometry,
    pub pathloss: PathLossParams,
    pub shadowing: ShadowingParams,
}

impl ChannelModel {
    pub fn new(
        geometry: NetworkGeometry,
        pathloss: PathLossParams,
        shadowing: ShadowingParams,
    ) -> Self {
        Self {
            geometry,
            pathloss,
            shadowing,
        }
    }

    /// Builds a model from raw values, validating every component.
    pub fn from_values(
        cell_radius_m: f64,
        close_in_m: f64,
        alpha_db: f64,
        beta_db: f64,
        sigma_psi_db: f64,
    ) -> Result<Self> {
        Ok(Self::new(
            NetworkGeometry::new(cell_radius_m, close_in_m)?,
            PathLossParams::new(alpha_db, beta_db)?,
            ShadowingParams::new(sigma_psi_db)?,
        ))
    }

    /// The urban macrocell preset; `cell_radius_m` must lie in [600, 3500] m.
    pub fn ieee_802_20(cell_radius_m: f64) -> Result<Self> {
        use ieee_802_20::*;
        if !(CELL_RADIUS_MIN_M..=CELL_RADIUS_MAX_M).contains(&cell_radius_m) {
            return Err(Error::Domain {
                name: "cell radius",
                value: cell_radius_m,
                lo: CELL_RADIUS_MIN_M,
                hi: CELL_RADIUS_MAX_M,
            });
        }
        Self::from_values(cell_radius_m, CLOSE_IN_M, ALPHA_DB, BETA_DB, SIGMA_PSI_DB)
    }

    pub fn with_sigma(mut self, sigma_psi_db: f64) -> Result<Self> {
        self.shadowing = ShadowingParams::new(sigma_psi_db)?;
        Ok(self)
    }

    pub fn with_alpha(mut self, alpha_db: f64) -> Result<Self> {
        self.pathloss = PathLossParams::new(alpha_db, self.pathloss.beta_db())?;
        Ok(self)
    }

    pub fn sigma(&self) -> f64 {
        self.shadowing.sigma_psi_db()
    }

    pub fn breakpoints_db(&self) -> Breakpoints {
        let g = &self.geometry;
        let w = |r: f64| self.pathloss.alpha_db() + self.pathloss.beta_db() * r.log10();
        Breakpoints {
            w0: w(g.close_in_m()),
            wi: w(g.inner_radius()),
            wl: w(g.cell_radius_m()),
        }
    }

    /// Density of the mean path loss `w` over a uniformly placed node, in 1/dB.
    pub fn mean_pl_pdf(&self, w: f64) -> f64 {
        let bp = self.breakpoints_db();
        if w < bp.w0 || w >= bp.wl {
            return 0.0;
        }
        let alpha = self.pathloss.alpha_db();
        let beta = self.pathloss.beta_db();
        let l = self.geometry.cell_radius_m();
        let scale = 4.0 * LN_10 * 10f64.powf(2.0 * (w - alpha) / beta)
            / (beta * self.geometry.density_denominator());
        let shape = if w <= bp.wi {
            PI
        } else {
            let arg = (SQRT_3 * l / (2.0 * 10f64.powf((w - alpha) / beta))).clamp(-1.0, 1.0);
            (6.0 * arg.asin() - 2.0 * PI).max(0.0)
        };
        scale * shape
    }
}
