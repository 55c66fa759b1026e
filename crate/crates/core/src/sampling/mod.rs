//! Node placement and sampler efficiency.
//!
//! Two acceptance-rejection samplers cover the sector: a Cartesian one that
//! draws the abscissa from its marginal and then the ordinate uniformly, and
//! a radial one that draws the distance directly. Their acceptance rates
//! have closed forms in the RCR, and [`choose_strategy`] picks the more
//! efficient of the two.

mod analytics;
mod cartesian;
mod radial;

pub use analytics::{
    acceptance_rate_cartesian, acceptance_rate_radial, ar_estimator_stats,
    ar_estimator_variance_closed_form, choose_strategy, crossover_rcr, optimal_rcr,
    ArEstimatorStats, Strategy,
};
pub use cartesian::{sample_hexagon_points, sample_sector_points, sample_x, sample_y_given_x};
pub use radial::{sample_polar_points, sample_radius};

use serde::Serialize;

use crate::geometry::{CartesianPoint, NetworkGeometry};
use crate::parallel;
use crate::rng::RngStream;

/// Accepted samples plus the number of proposals it took to get them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch<T> {
    pub samples: Vec<T>,
    pub n_total: u64,
}

impl<T> SampleBatch<T> {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            samples: Vec::with_capacity(n),
            n_total: 0,
        }
    }

    pub fn n_accepted(&self) -> u64 {
        self.samples.len() as u64
    }

    /// Empirical acceptance ratio `n_S / n_T`.
    pub fn acceptance_ratio(&self) -> f64 {
        if self.n_total == 0 {
            0.0
        } else {
            self.n_accepted() as f64 / self.n_total as f64
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Appends `other`, keeping samples in order and adding proposal counts.
    pub fn extend(&mut self, other: SampleBatch<T>) {
        self.samples.extend(other.samples);
        self.n_total += other.n_total;
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> SampleBatch<U> {
        SampleBatch {
            samples: self.samples.into_iter().map(f).collect(),
            n_total: self.n_total,
        }
    }

    fn concat(parts: Vec<SampleBatch<T>>) -> Self {
        let n = parts.iter().map(|p| p.samples.len()).sum();
        let mut out = Self::with_capacity(n);
        for p in parts {
            out.extend(p);
        }
        out
    }
}

/// Distances drawn with the given strategy: directly from the radial law,
/// or as norms of Cartesian sector points.
pub fn sample_distances(
    geom: &NetworkGeometry,
    rng: &mut RngStream,
    n_s: usize,
    strategy: Strategy,
) -> SampleBatch<f64> {
    match strategy {
        Strategy::Radial => sample_radius(geom, rng, n_s),
        Strategy::Cartesian => sample_sector_points(geom, rng, n_s).map(|p| p.norm()),
    }
}

/// Sector points drawn with the given strategy. Under the radial strategy
/// the angle is uniform over the admissible set for each drawn distance.
pub fn sample_points(
    geom: &NetworkGeometry,
    rng: &mut RngStream,
    n_s: usize,
    strategy: Strategy,
) -> SampleBatch<CartesianPoint> {
    match strategy {
        Strategy::Radial => sample_polar_points(geom, rng, n_s).map(|q| q.to_cartesian()),
        Strategy::Cartesian => sample_sector_points(geom, rng, n_s),
    }
}

/// [`sample_distances`] split across `workers` substreams of `seed`.
pub fn sample_distances_par(
    geom: &NetworkGeometry,
    seed: u64,
    n_s: usize,
    workers: usize,
    strategy: Strategy,
) -> SampleBatch<f64> {
    SampleBatch::concat(parallel::map_chunks(seed, n_s, workers, |rng, len| {
        sample_distances(geom, rng, len, strategy)
    }))
}

/// [`sample_points`] split across `workers` substreams of `seed`.
pub fn sample_points_par(
    geom: &NetworkGeometry,
    seed: u64,
    n_s: usize,
    workers: usize,
    strategy: Strategy,
) -> SampleBatch<CartesianPoint> {
    SampleBatch::concat(parallel::map_chunks(seed, n_s, workers, |rng, len| {
        sample_points(geom, rng, len, strategy)
    }))
}

/// [`sample_hexagon_points`] split across `workers` substreams of `seed`.
pub fn sample_hexagon_points_par(
    geom: &NetworkGeometry,
    seed: u64,
    n_s: usize,
    workers: usize,
) -> SampleBatch<CartesianPoint> {
    SampleBatch::concat(parallel::map_chunks(seed, n_s, workers, |rng, len| {
        sample_hexagon_points(geom, rng, len)
    }))
}
