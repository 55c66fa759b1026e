//! Deployment region and spatial densities.
//!
//! The hexagonal cell is split into six equilateral triangles with the base
//! station at the shared vertex. Analysis runs on the sector with vertices
//! `(0, 0)`, `(L, 0)` and `(L/2, √3L/2)`, minus the far-field exclusion disk
//! of radius `r0`. Every density here is uniform-in-area over that region.

use std::f64::consts::{FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_domain, Error, Result};

pub(crate) const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Relative slack on membership tests so points produced by rounding on
/// the closed boundary still count as inside.
const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
}

impl CartesianPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn to_polar(&self) -> PolarPoint {
        PolarPoint {
            r: self.norm(),
            theta: self.y.atan2(self.x),
        }
    }

    /// Rotation about the origin by `angle` radians.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }

    pub fn to_cartesian(&self) -> CartesianPoint {
        let (s, c) = self.theta.sin_cos();
        CartesianPoint {
            x: self.r * c,
            y: self.r * s,
        }
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Admissible angles for a node at a given distance from the base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaRange {
    /// The whole sector opening `[0, π/3]`.
    Full(Interval),
    /// Two arcs symmetric about `π/6`, left after the far edge cuts the circle.
    Split(Interval, Interval),
}

impl ThetaRange {
    /// Total angular measure.
    pub fn measure(&self) -> f64 {
        match self {
            Self::Full(i) => i.width(),
            Self::Split(a, b) => a.width() + b.width(),
        }
    }

    pub fn intervals(&self) -> Vec<Interval> {
        match *self {
            Self::Full(i) => vec![i],
            Self::Split(a, b) => vec![a, b],
        }
    }

    pub fn contains(&self, theta: f64) -> bool {
        match self {
            Self::Full(i) => i.contains(theta),
            Self::Split(a, b) => a.contains(theta) || b.contains(theta),
        }
    }

    /// Maps `u ∈ [0, 1]` onto the set so that a uniform `u` yields a uniform
    /// angle over the total measure.
    pub fn at_fraction(&self, u: f64) -> f64 {
        match *self {
            Self::Full(i) => i.lo + u * i.width(),
            Self::Split(a, b) => {
                let s = u * (a.width() + b.width());
                if s <= a.width() {
                    a.lo + s
                } else {
                    (b.lo + (s - a.width())).min(b.hi)
                }
            }
        }
    }
}

/// Cell radius `L` and close-in distance `r0`, with `L / r0 > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry")]
pub struct NetworkGeometry {
    cell_radius_m: f64,
    close_in_m: f64,
}

#[derive(Deserialize)]
struct RawGeometry {
    cell_radius_m: f64,
    close_in_m: f64,
}

impl TryFrom<RawGeometry> for NetworkGeometry {
    type Error = Error;

    fn try_from(raw: RawGeometry) -> Result<Self> {
        Self::new(raw.cell_radius_m, raw.close_in_m)
    }
}

impl NetworkGeometry {
    pub fn new(cell_radius_m: f64, close_in_m: f64) -> Result<Self> {
        if !(cell_radius_m.is_finite() && cell_radius_m > 0.0) {
            return Err(Error::InvalidParameter {
                name: "cell radius",
                expected: "positive and finite",
                value: cell_radius_m,
            });
        }
        if !(close_in_m.is_finite() && close_in_m > 0.0) {
            return Err(Error::InvalidParameter {
                name: "close-in distance",
                expected: "positive and finite",
                value: close_in_m,
            });
        }
        let rcr = cell_radius_m / close_in_m;
        if rcr <= 2.0 {
            return Err(Error::RcrTooSmall {
                cell_radius_m,
                close_in_m,
                rcr,
            });
        }
        Ok(Self {
            cell_radius_m,
            close_in_m,
        })
    }

    /// Geometry with unit cell radius and the given RCR.
    pub fn unit_with_rcr(rcr: f64) -> Result<Self> {
        Self::new(1.0, 1.0 / rcr)
    }

    pub fn cell_radius_m(&self) -> f64 {
        self.cell_radius_m
    }

    pub fn close_in_m(&self) -> f64 {
        self.close_in_m
    }

    /// Ratio of cell radius to close-in distance, `μ = L / r0`.
    pub fn rcr(&self) -> f64 {
        self.cell_radius_m / self.close_in_m
    }

    /// `3√3 L² − 2π r0²`, which is twelve times the sector's far-field area.
    pub fn density_denominator(&self) -> f64 {
        let l = self.cell_radius_m;
        let r0 = self.close_in_m;
        3.0 * SQRT_3 * l * l - 2.0 * PI * r0 * r0
    }

    pub fn far_field_area(&self) -> f64 {
        self.density_denominator() / 12.0
    }

    /// Nodes per square metre when `n_nodes` cover the whole hexagon.
    pub fn areal_density(&self, n_nodes: u64) -> f64 {
        n_nodes as f64 / (6.0 * self.far_field_area())
    }

    /// Distance to the mid-point of the sector's far edge, `√3 L / 2`.
    pub fn inner_radius(&self) -> f64 {
        0.5 * SQRT_3 * self.cell_radius_m
    }

    fn slack(&self) -> f64 {
        BOUNDARY_SLACK * self.cell_radius_m
    }

    pub fn contains(&self, p: CartesianPoint) -> bool {
        let l = self.cell_radius_m;
        let r0 = self.close_in_m;
        let eps = self.slack();
        p.y >= -eps
            && p.y <= SQRT_3 * p.x + eps
            && p.y <= SQRT_3 * (l - p.x) + eps
            && p.x.hypot(p.y) >= r0 - eps
    }

    /// Membership in the full hexagon (circumradius `L`, vertex at angle 0)
    /// minus the exclusion disk.
    pub fn hexagon_contains(&self, p: CartesianPoint) -> bool {
        let angle = p.y.atan2(p.x).rem_euclid(2.0 * PI);
        let k = ((angle / FRAC_PI_3).floor() as i64).clamp(0, 5);
        self.contains(p.rotated(-(k as f64) * FRAC_PI_3))
    }

    /// Membership of a polar point, decided through the admissible angle
    /// set rather than the Cartesian inequalities.
    pub fn polar_contains(&self, q: PolarPoint) -> bool {
        let eps = self.slack();
        if q.r < self.close_in_m - eps || q.r > self.cell_radius_m + eps {
            return false;
        }
        let r = q.r.clamp(self.close_in_m, self.cell_radius_m);
        let tol = BOUNDARY_SLACK;
        match self.theta_range_given_r(r) {
            Ok(range) => range
                .intervals()
                .iter()
                .any(|i| q.theta >= i.lo - tol && q.theta <= i.hi + tol),
            Err(_) => false,
        }
    }

    /// Uniform joint density over the sector, in 1/m².
    pub fn joint_pdf_xy(&self, p: CartesianPoint) -> f64 {
        if self.contains(p) {
            12.0 / self.density_denominator()
        } else {
            0.0
        }
    }

    /// Marginal density of the abscissa, in 1/m.
    pub fn marginal_pdf_x(&self, x: f64) -> f64 {
        let l = self.cell_radius_m;
        let r0 = self.close_in_m;
        let c = 12.0 / self.density_denominator();
        if x < 0.5 * r0 || x > l {
            0.0
        } else if x <= r0 {
            c * (SQRT_3 * x - (r0 * r0 - x * x).max(0.0).sqrt())
        } else if x <= 0.5 * l {
            c * SQRT_3 * x
        } else {
            c * SQRT_3 * (l - x)
        }
    }

    /// Support of the (uniform) law of `Y` given `X = x_hat`.
    pub fn conditional_pdf_y(&self, x_hat: f64) -> Result<Interval> {
        let l = self.cell_radius_m;
        let r0 = self.close_in_m;
        check_domain("x", x_hat, 0.5 * r0, l)?;
        Ok(if x_hat <= r0 {
            Interval::new((r0 * r0 - x_hat * x_hat).max(0.0).sqrt(), SQRT_3 * x_hat)
        } else if x_hat <= 0.5 * l {
            Interval::new(0.0, SQRT_3 * x_hat)
        } else {
            Interval::new(0.0, (SQRT_3 * (l - x_hat)).max(0.0))
        })
    }

    /// Joint density in polar coordinates, `12 r / D` on the domain.
    pub fn polar_joint_pdf(&self, q: PolarPoint) -> f64 {
        if self.polar_contains(q) {
            12.0 * q.r / self.density_denominator()
        } else {
            0.0
        }
    }

    pub fn theta_range_given_r(&self, r: f64) -> Result<ThetaRange> {
        check_domain("r", r, self.close_in_m, self.cell_radius_m)?;
        if r <= self.inner_radius() {
            return Ok(ThetaRange::Full(Interval::new(0.0, FRAC_PI_3)));
        }
        let a = (self.inner_radius() / r).min(1.0).asin();
        let first = (a - FRAC_PI_3).max(0.0);
        let second = (2.0 * FRAC_PI_3 - a).min(FRAC_PI_3);
        Ok(ThetaRange::Split(
            Interval::new(0.0, first),
            Interval::new(second, FRAC_PI_3),
        ))
    }

    /// Distance from the base station to the far edge along angle `theta`.
    pub fn coverage_radius(&self, theta: f64) -> Result<f64> {
        check_domain("theta", theta, 0.0, FRAC_PI_3)?;
        Ok(SQRT_3 * self.cell_radius_m / (2.0 * (2.0 * FRAC_PI_3 - theta).sin()))
    }

    /// Density of the node-to-base-station distance, in 1/m.
    pub fn radial_pdf(&self, r: f64) -> f64 {
        let d = self.density_denominator();
        if r < self.close_in_m || r >= self.cell_radius_m {
            0.0
        } else if r <= self.inner_radius() {
            4.0 * PI * r / d
        } else {
            let a = (self.inner_radius() / r).min(1.0).asin();
            (8.0 * r * (3.0 * a - PI) / d).max(0.0)
        }
    }

    /// Peak of the radial density, reached at `√3 L / 2`.
    pub fn radial_pdf_max(&self) -> f64 {
        2.0 * SQRT_3 * PI * self.cell_radius_m / self.density_denominator()
    }

    /// Peak of the abscissa density, reached on `[r0, L/2]` at `x = L/2`.
    pub fn marginal_pdf_x_max(&self) -> f64 {
        6.0 * SQRT_3 * self.cell_radius_m / self.density_denominator()
    }
}

/// Opening angle of one sector.
pub const SECTOR_ANGLE: f64 = FRAC_PI_3;
