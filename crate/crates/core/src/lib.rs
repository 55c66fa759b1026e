//! Random spatial geometry of a hexagonal cell with a far-field exclusion
//! zone, efficient node placement, and the exact density of large-scale
//! fading (mean path loss plus log-normal shadowing) between the reference
//! base station and a uniformly placed node.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: the triangle sector, its exclusion disk and every spatial
//!   density (Cartesian, conditional, polar, radial).
//! * [`sampling`]: seeded acceptance-rejection samplers and the closed-form
//!   acceptance-rate analytics used to pick between them.
//! * [`channel`]: the log-distance path-loss law and the density of the
//!   average path loss over a random node.
//! * [`lsf`]: the closed-form shadowed density, its CDF and an independent
//!   convolution route used to check it.
//! * [`montecarlo`]: the simulation pipeline, histogram estimates and the
//!   goodness-of-fit report.
//!
//! With the default `parallel` feature, batch work is spread over rayon.
//! Without it the same substream layout runs sequentially and produces
//! bit-identical output.

pub mod channel;
pub mod error;
pub mod geometry;
pub mod lsf;
pub mod montecarlo;
pub mod parallel;
pub mod quadrature;
pub mod rng;
pub mod sampling;

pub use channel::{ChannelModel, PathLossParams, ShadowingParams};
pub use error::{Error, Result};
pub use geometry::{CartesianPoint, NetworkGeometry, PolarPoint};
pub use lsf::LsfDensity;
pub use rng::RngStream;
pub use sampling::{SampleBatch, Strategy};
