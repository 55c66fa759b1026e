//! Density of large-scale fading: mean path loss of a uniformly placed node
//! plus zero-mean Gaussian shadowing in dB.
//!
//! [`LsfDensity::pdf`] evaluates the exact closed form: a weighted sum of
//! Gaussian tail probabilities plus one smooth one-dimensional integral over
//! the far-edge band `[zI, zL]`. [`convolution_oracle`] computes the same
//! density by directly convolving the mean path-loss density with the
//! shadowing kernel, and is kept independent of the closed form so the two
//! can check each other.

use std::f64::consts::{LN_10, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::channel::ChannelModel;
use crate::error::{Error, Result};
use crate::parallel;
use crate::quadrature::Quadrature;

/// Upper-tail probability of the standard normal, `erfc(z/√2) / 2`.
pub fn q_function(z: f64) -> f64 {
    0.5 * libm::erfc(z / SQRT_2)
}

/// `P(a < Z < b)` for a standard normal `Z`, without cancellation when both
/// ends sit in the same tail.
pub fn normal_interval(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        q_function(a) - q_function(b)
    } else if b <= 0.0 {
        q_function(-b) - q_function(-a)
    } else {
        1.0 - q_function(-a) - q_function(b)
    }
}

fn standard_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Standardised breakpoints for a given fading level `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZBreakpoints {
    pub z0: f64,
    pub zi: f64,
    pub zl: f64,
}

fn require_shadowing(model: &ChannelModel) -> Result<f64> {
    let sigma = model.sigma();
    if sigma > 0.0 {
        Ok(sigma)
    } else {
        Err(Error::DegenerateShadowing)
    }
}

/// Breakpoints from the dB values: `(w̃ − l − 2 ln10 σ² / β) / σ`.
pub fn z_breakpoints(model: &ChannelModel, l: f64) -> Result<ZBreakpoints> {
    let sigma = require_shadowing(model)?;
    let beta = model.pathloss.beta_db();
    let centre = l + 2.0 * LN_10 * sigma * sigma / beta;
    let bp = model.breakpoints_db();
    let z = |w: f64| (w - centre) / sigma;
    Ok(ZBreakpoints {
        z0: z(bp.w0),
        zi: z(bp.wi),
        zl: z(bp.wl),
    })
}

/// Breakpoints from the distances, in the natural-log arrangement
/// `{α − l + ln(r̃^(β/ln10) / 10^(2σ²/β))} / σ`.
pub fn z_breakpoints_log_form(model: &ChannelModel, l: f64) -> Result<ZBreakpoints> {
    let sigma = require_shadowing(model)?;
    let alpha = model.pathloss.alpha_db();
    let beta = model.pathloss.beta_db();
    let g = &model.geometry;
    let z = |r: f64| {
        let log_ratio = (beta / LN_10) * r.ln() - (2.0 * sigma * sigma / beta) * LN_10;
        (alpha - l + log_ratio) / sigma
    };
    Ok(ZBreakpoints {
        z0: z(g.close_in_m()),
        zi: z(g.inner_radius()),
        zl: z(g.cell_radius_m()),
    })
}

/// Reporting window `[l̃0, l̃L]`: mean path loss at `r0` and `L`, widened by
/// three shadowing standard deviations. The density is not truncated to it.
pub fn support_bounds(model: &ChannelModel) -> (f64, f64) {
    let bp = model.breakpoints_db();
    let s = 3.0 * model.sigma();
    (bp.w0 - s, bp.wl + s)
}

/// Density by direct numerical convolution of the mean path-loss density
/// with the Gaussian shadowing kernel.
pub fn convolution_oracle(model: &ChannelModel, l: f64) -> Result<f64> {
    let sigma = require_shadowing(model)?;
    let bp = model.breakpoints_db();
    let integrand = |tau: f64| {
        model.mean_pl_pdf(tau) * standard_normal_pdf((l - tau) / sigma) / sigma
    };
    let mut breaks = vec![bp.w0, bp.wi, bp.wl];
    for k in [-8.0, -4.0, -1.0, 0.0, 1.0, 4.0, 8.0] {
        let p = l + k * sigma;
        if p > bp.w0 && p < bp.wl {
            breaks.push(p);
        }
    }
    breaks.sort_by(f64::total_cmp);
    let r = Quadrature::new(1e-300, 1e-10)
        .with_max_subdivisions(2000)
        .integrate_with_breaks(integrand, &breaks);
    Ok(r.value)
}

fn gauss_legendre_5(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const NODES: [f64; 3] = [0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
    const WEIGHTS: [f64; 3] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = WEIGHTS[0] * f(c);
    for i in 1..3 {
        sum += WEIGHTS[i] * (f(c - h * NODES[i]) + f(c + h * NODES[i]));
    }
    h * sum
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Closed-form large-scale fading density for one channel model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsfDensity {
    model: ChannelModel,
    tolerance: f64,
    k0: f64,
    prefactor: f64,
    /// `ln(4 ln10 / (β D)) + ln K0`, so the `10^(2(l−α)/β)` growth can be
    /// applied in log space.
    log_scale: f64,
}

impl LsfDensity {
    pub fn new(model: ChannelModel) -> Self {
        Self::build(model, DEFAULT_TOLERANCE)
    }

    /// `tolerance` is the relative tolerance of the inner integral and must
    /// lie in `(0, 1e-3]`.
    pub fn with_tolerance(model: ChannelModel, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance <= 1e-3) {
            return Err(Error::InvalidParameter {
                name: "quadrature tolerance",
                expected: "in (0, 1e-3]",
                value: tolerance,
            });
        }
        Ok(Self::build(model, tolerance))
    }

    fn build(model: ChannelModel, tolerance: f64) -> Self {
        let alpha = model.pathloss.alpha_db();
        let beta = model.pathloss.beta_db();
        let sigma = model.sigma();
        let d = model.geometry.density_denominator();
        let k0_exponent = (SQRT_2 * LN_10 * sigma / beta).powi(2);
        let base = 4.0 * LN_10 / (beta * d);
        Self {
            model,
            tolerance,
            k0: k0_exponent.exp(),
            prefactor: base * 10f64.powf(-2.0 * alpha / beta),
            log_scale: base.ln() + k0_exponent,
        }
    }

    pub fn model(&self) -> &ChannelModel {
        &self.model
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `exp((√2 ln10 σ / β)²)`.
    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// `4 ln10 · 10^(−2α/β) / (β D)`.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn support_bounds(&self) -> (f64, f64) {
        support_bounds(&self.model)
    }

    /// Density at fading level `l` dB, in 1/dB. Falls back to the mean
    /// path-loss density when shadowing is zero.
    pub fn pdf(&self, l: f64) -> f64 {
        let sigma = self.model.sigma();
        if sigma == 0.0 {
            return self.model.mean_pl_pdf(l);
        }
        let alpha = self.model.pathloss.alpha_db();
        let beta = self.model.pathloss.beta_db();
        let z = z_breakpoints(&self.model, l).expect("shadowing is nonzero");

        let tails = PI * (normal_interval(z.z0, z.zi) - 2.0 * normal_interval(z.zi, z.zl));

        // With t = zI + s² the arcsin argument is exactly exp(−k s²), k = σ ln10 / β,
        // and the square-root behaviour at t = zI becomes smooth in s.
        let k = sigma * LN_10 / beta;
        let zi = z.zi;
        let band = |s: f64| {
            let u = k * s * s;
            let t = zi + s * s;
            let asin = (-u).exp().atan2((-(-2.0 * u).exp_m1()).sqrt());
            2.0 * s * (-0.5 * t * t).exp() * asin
        };
        let inner = Quadrature::new(1e-300, self.tolerance)
            .integrate(band, 0.0, (z.zl - z.zi).max(0.0).sqrt())
            .value;
        let bracket = tails + 3.0 * (2.0 / PI).sqrt() * inner;

        let scale = (self.log_scale + 2.0 * LN_10 * (l - alpha) / beta).exp();
        (scale * bracket).max(0.0)
    }

    /// Densities over a grid, evaluated in parallel when enabled.
    pub fn pdf_grid(&self, ls: &[f64]) -> Vec<f64> {
        parallel::map_slice(ls, |&l| self.pdf(l))
    }

    /// Lower end of the cumulative integration, `l̃0 − 6σ` (nine standard
    /// deviations below the smallest mean path loss).
    pub fn cdf_origin(&self) -> f64 {
        let bp = self.model.breakpoints_db();
        bp.w0 - 9.0 * self.model.sigma()
    }

    fn pieces(&self, a: f64, b: f64) -> Vec<f64> {
        let bp = self.model.breakpoints_db();
        let mut pts = vec![a];
        pts.extend([bp.w0, bp.wi, bp.wl].into_iter().filter(|&w| w > a && w < b));
        pts.push(b);
        pts
    }

    fn mass(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let pts = self.pieces(a, b);
        // Short smooth pieces (a fraction of σ) are polynomial to working
        // precision; a fixed Gauss–Legendre rule is enough there.
        if pts.len() == 2 && b - a <= 0.05 * self.model.sigma() {
            return gauss_legendre_5(|t| self.pdf(t), a, b);
        }
        Quadrature::new(1e-14, 1e-10)
            .integrate_with_breaks(|t| self.pdf(t), &pts)
            .value
    }

    /// `P(L ≤ l)` by adaptive integration of the density.
    pub fn cdf(&self, l: f64) -> f64 {
        self.mass(self.cdf_origin(), l).clamp(0.0, 1.0)
    }

    /// CDF at many points. Masses between consecutive sorted points are
    /// integrated independently (in parallel when enabled) and accumulated
    /// in ascending order, so the result is monotone in `l`.
    pub fn cdf_many(&self, ls: &[f64]) -> Vec<f64> {
        if ls.is_empty() {
            return Vec::new();
        }
        let mut order: Vec<usize> = (0..ls.len()).collect();
        order.sort_by(|&i, &j| ls[i].total_cmp(&ls[j]));
        let origin = self.cdf_origin();
        let mut knots = Vec::with_capacity(ls.len() + 1);
        knots.push(origin);
        knots.extend(order.iter().map(|&i| ls[i].max(origin)));
        let pairs: Vec<(f64, f64)> = knots.windows(2).map(|w| (w[0], w[1])).collect();
        let masses = parallel::map_slice(&pairs, |&(a, b)| self.mass(a, b));

        let mut out = vec![0.0; ls.len()];
        let mut acc = 0.0;
        for (&i, m) in order.iter().zip(masses) {
            acc += m;
            out[i] = acc.clamp(0.0, 1.0);
        }
        out
    }

    /// Mean and variance of the fading level by numerical integration.
    pub fn moments(&self) -> (f64, f64) {
        let bp = self.model.breakpoints_db();
        let s = self.model.sigma();
        let a = bp.w0 - 9.0 * s;
        let b = bp.wl + 9.0 * s;
        let q = Quadrature::new(1e-14, 1e-10);
        let pts = self.pieces(a, b);
        let m0 = q.integrate_with_breaks(|t| self.pdf(t), &pts).value;
        let m1 = q.integrate_with_breaks(|t| t * self.pdf(t), &pts).value / m0;
        let m2 = q
            .integrate_with_breaks(|t| (t - m1).powi(2) * self.pdf(t), &pts)
            .value
            / m0;
        (m1, m2)
    }
}
