//! Monte-Carlo validation: random nodes, their mean path loss and shadowed
//! fading samples, histogram/CDF estimates, and a goodness-of-fit report
//! against the closed-form density.

use serde::{Deserialize, Serialize};

use crate::channel::ChannelModel;
use crate::error::{Error, Result};
use crate::lsf::{support_bounds, LsfDensity};
use crate::parallel;
use crate::rng::RngStream;
use crate::sampling::{choose_strategy, sample_distances, Strategy};

/// One simulated node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LsfSample {
    pub distance_m: f64,
    pub mean_pl_db: f64,
    /// Standard normal draw behind the shadowing term.
    pub shadow_normal: f64,
    pub lsf_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    pub strategy: Strategy,
    pub samples: Vec<LsfSample>,
    /// Proposals consumed by the spatial sampler.
    pub n_proposals: u64,
}

impl Simulation {
    pub fn lsf_values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.lsf_db).collect()
    }

    pub fn acceptance_ratio(&self) -> f64 {
        if self.n_proposals == 0 {
            0.0
        } else {
            self.samples.len() as f64 / self.n_proposals as f64
        }
    }
}

/// Draws `n_s` nodes with the more efficient sampler for the model's RCR,
/// then adds `σ n̂` of shadowing to each node's mean path loss.
pub fn simulate_lsf_samples(model: &ChannelModel, rng: &mut RngStream, n_s: usize) -> Simulation {
    let strategy = choose_strategy(model.geometry.rcr()).expect("geometry enforces RCR > 2");
    simulate_with_strategy(model, rng, n_s, strategy)
}

pub fn simulate_with_strategy(
    model: &ChannelModel,
    rng: &mut RngStream,
    n_s: usize,
    strategy: Strategy,
) -> Simulation {
    let distances = sample_distances(&model.geometry, rng, n_s, strategy);
    let sigma = model.sigma();
    let alpha = model.pathloss.alpha_db();
    let beta = model.pathloss.beta_db();
    let samples = distances
        .samples
        .iter()
        .map(|&r| {
            let mean_pl_db = alpha + beta * r.log10();
            let shadow_normal = rng.next_standard_normal();
            LsfSample {
                distance_m: r,
                mean_pl_db,
                shadow_normal,
                lsf_db: mean_pl_db + sigma * shadow_normal,
            }
        })
        .collect();
    Simulation {
        strategy,
        samples,
        n_proposals: distances.n_total,
    }
}

/// [`simulate_lsf_samples`] split across `workers` substreams of `seed`.
pub fn simulate_lsf_samples_par(
    model: &ChannelModel,
    seed: u64,
    n_s: usize,
    workers: usize,
) -> Simulation {
    let parts = parallel::map_chunks(seed, n_s, workers, |rng, len| {
        simulate_lsf_samples(model, rng, len)
    });
    merge(parts, model)
}

/// Sequential twin of [`simulate_lsf_samples_par`]; identical output.
pub fn simulate_lsf_samples_seq(
    model: &ChannelModel,
    seed: u64,
    n_s: usize,
    workers: usize,
) -> Simulation {
    let parts = parallel::map_chunks_sequential(seed, n_s, workers, |rng, len| {
        simulate_lsf_samples(model, rng, len)
    });
    merge(parts, model)
}

fn merge(parts: Vec<Simulation>, model: &ChannelModel) -> Simulation {
    let strategy = choose_strategy(model.geometry.rcr()).expect("geometry enforces RCR > 2");
    let n = parts.iter().map(|p| p.samples.len()).sum();
    let mut out = Simulation {
        strategy,
        samples: Vec::with_capacity(n),
        n_proposals: 0,
    };
    for p in parts {
        out.samples.extend(p.samples);
        out.n_proposals += p.n_proposals;
    }
    out
}

/// Equal-width histogram scaled to a density estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
    pub n_samples: u64,
    pub bin_width: f64,
}

impl Histogram {
    /// Bins `samples` into `n_bins` equal-width bins over `range`, defaulting
    /// to `[min, max]` of the samples. Samples on an interior edge go to the
    /// bin on its right; the upper end of the range belongs to the last bin.
    /// Densities are `count / (n_samples · width)`, so samples outside the
    /// range lower the total mass below one.
    pub fn from_samples(samples: &[f64], n_bins: usize, range: Option<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if n_bins == 0 {
            return Err(Error::InvalidParameter {
                name: "bin count",
                expected: "at least 1",
                value: 0.0,
            });
        }
        let (lo, hi) = range.unwrap_or_else(|| {
            samples
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
        });
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "histogram range width",
                expected: "positive and finite",
                value: hi - lo,
            });
        }
        let width = (hi - lo) / n_bins as f64;
        let mut edges: Vec<f64> = (0..=n_bins).map(|j| lo + j as f64 * width).collect();
        edges[n_bins] = hi;

        let mut counts = vec![0u64; n_bins];
        for &x in samples {
            if x < lo || x > hi {
                continue;
            }
            let mut j = (((x - lo) / width) as usize).min(n_bins - 1);
            while j + 1 < n_bins && x >= edges[j + 1] {
                j += 1;
            }
            while j > 0 && x < edges[j] {
                j -= 1;
            }
            counts[j] += 1;
        }

        let n = samples.len() as u64;
        let densities = counts
            .iter()
            .map(|&c| c as f64 / (n as f64 * width))
            .collect();
        Ok(Self {
            bin_edges: edges,
            counts,
            densities,
            n_samples: n,
            bin_width: width,
        })
    }

    pub fn n_bins(&self) -> usize {
        self.densities.len()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Running sum of `density · width`.
    pub fn empirical_cdf(&self) -> Vec<f64> {
        self.densities
            .iter()
            .scan(0.0, |acc, d| {
                *acc += d * self.bin_width;
                Some(*acc)
            })
            .collect()
    }
}

/// Fraction of samples whose shadowing stays within `±3σ` of their mean
/// path loss.
pub fn ci_coverage(samples: &[LsfSample], sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::DegenerateShadowing);
    }
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let inside = samples
        .iter()
        .filter(|s| (s.lsf_db - s.mean_pl_db).abs() <= 3.0 * sigma)
        .count();
    Ok(inside as f64 / samples.len() as f64)
}

/// `sup |F_n − F|` for ascending `sorted` samples and the model CDF at each.
pub fn ks_statistic(sorted: &[f64], cdf_at_samples: &[f64]) -> f64 {
    debug_assert_eq!(sorted.len(), cdf_at_samples.len());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        // Ties share one step of the empirical CDF.
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let f = cdf_at_samples[i];
        d = d.max(f - i as f64 / n).max((j + 1) as f64 / n - f);
        i = j + 1;
    }
    d
}

/// Sorts `values` and returns the KS distance against `cdf`.
pub fn ks_distance(values: &[f64], cdf: impl Fn(&[f64]) -> Vec<f64>) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let f = cdf(&sorted);
    ks_statistic(&sorted, &f)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub seed: u64,
    pub n_samples: usize,
    pub n_bins: usize,
    pub workers: usize,
}

impl ValidationConfig {
    pub fn new(seed: u64, n_samples: usize, n_bins: usize) -> Self {
        Self {
            seed,
            n_samples,
            n_bins,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramReport {
    pub bin_edges: Vec<f64>,
    pub bin_centers: Vec<f64>,
    pub densities: Vec<f64>,
    pub cdf: Vec<f64>,
    pub analytic_density: Vec<f64>,
    pub bin_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub model: ChannelModel,
    pub seed: u64,
    pub n_samples: usize,
    pub n_bins: usize,
    pub workers: usize,
    pub strategy: Strategy,
    pub n_proposals: u64,
    pub acceptance_ratio: f64,
    pub support_bounds_db: (f64, f64),
    pub ks_distance: f64,
    pub ks_critical_1pct: f64,
    pub ks_pass: bool,
    pub ci_coverage: Option<f64>,
    pub sample_mean_db: f64,
    pub analytic_mean_db: f64,
    pub analytic_variance_db2: f64,
    pub histogram: HistogramReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRun {
    pub report: ValidationReport,
    pub simulation: Simulation,
}

/// Runs the whole pipeline: simulate, bin, and compare with the closed form.
/// The KS distance uses the raw empirical CDF, not the binned one.
pub fn validate(model: &ChannelModel, config: &ValidationConfig) -> Result<ValidationRun> {
    if config.n_samples == 0 {
        return Err(Error::EmptySamples);
    }
    let simulation =
        simulate_lsf_samples_par(model, config.seed, config.n_samples, config.workers);
    let values = simulation.lsf_values();
    let density = LsfDensity::new(*model);

    let hist = Histogram::from_samples(&values, config.n_bins, None)?;
    let centers = hist.centers();
    let histogram = HistogramReport {
        analytic_density: density.pdf_grid(&centers),
        cdf: hist.empirical_cdf(),
        bin_edges: hist.bin_edges.clone(),
        bin_centers: centers,
        densities: hist.densities.clone(),
        bin_width: hist.bin_width,
    };

    let ks = ks_distance(&values, |s| density.cdf_many(s));
    let critical = ks_critical_1pct(values.len());
    let coverage = if model.sigma() > 0.0 {
        Some(ci_coverage(&simulation.samples, model.sigma())?)
    } else {
        None
    };
    let (analytic_mean_db, analytic_variance_db2) = density.moments();

    let report = ValidationReport {
        model: *model,
        seed: config.seed,
        n_samples: config.n_samples,
        n_bins: config.n_bins,
        workers: config.workers,
        strategy: simulation.strategy,
        n_proposals: simulation.n_proposals,
        acceptance_ratio: simulation.acceptance_ratio(),
        support_bounds_db: support_bounds(model),
        ks_distance: ks,
        ks_critical_1pct: critical,
        ks_pass: ks < critical,
        ci_coverage: coverage,
        sample_mean_db: values.iter().sum::<f64>() / values.len() as f64,
        analytic_mean_db,
        analytic_variance_db2,
        histogram,
    };
    Ok(ValidationRun { report, simulation })
}
