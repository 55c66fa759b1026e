use crate::error::Result;
use crate::geometry::{CartesianPoint, NetworkGeometry, SECTOR_ANGLE};
use crate::rng::RngStream;

use super::SampleBatch;

/// Abscissae distributed as the sector's marginal, by acceptance-rejection
/// against a uniform proposal on `[r0/2, L]` scaled to the marginal's peak.
pub fn sample_x(geom: &NetworkGeometry, rng: &mut RngStream, n_s: usize) -> SampleBatch<f64> {
    let l = geom.cell_radius_m();
    let r0 = geom.close_in_m();
    let half_r0 = 0.5 * r0;
    let half_l = 0.5 * l;
    let mut batch = SampleBatch::with_capacity(n_s);

    while batch.samples.len() < n_s {
        batch.n_total += 1;
        let u0 = rng.next_uniform();
        let u1 = rng.next_uniform();
        let v = half_r0 + u1 * (l - half_r0);
        let accept = if v <= r0 {
            v - ((r0 * r0 - v * v).max(0.0) / 3.0).sqrt() > u0 * half_l
        } else if v <= half_l {
            v > u0 * half_l
        } else {
            v < l * (1.0 - 0.5 * u0)
        };
        if accept {
            batch.samples.push(v);
        }
    }
    batch
}

/// Ordinate drawn uniformly from the conditional support at `x_hat`.
pub fn sample_y_given_x(geom: &NetworkGeometry, rng: &mut RngStream, x_hat: f64) -> Result<f64> {
    let support = geom.conditional_pdf_y(x_hat)?;
    Ok(support.lo + rng.next_uniform() * support.width())
}

/// Uniform points over the sector.
pub fn sample_sector_points(
    geom: &NetworkGeometry,
    rng: &mut RngStream,
    n_s: usize,
) -> SampleBatch<CartesianPoint> {
    let xs = sample_x(geom, rng, n_s);
    let n_total = xs.n_total;
    let samples = xs
        .samples
        .into_iter()
        .map(|x| {
            let y = sample_y_given_x(geom, rng, x).expect("accepted abscissa lies in [r0/2, L]");
            CartesianPoint::new(x, y)
        })
        .collect();
    SampleBatch { samples, n_total }
}

/// Uniform points over the whole hexagonal cell: a sector point rotated into
/// one of the six sectors chosen uniformly.
pub fn sample_hexagon_points(
    geom: &NetworkGeometry,
    rng: &mut RngStream,
    n_s: usize,
) -> SampleBatch<CartesianPoint> {
    let sector = sample_sector_points(geom, rng, n_s);
    let n_total = sector.n_total;
    let samples = sector
        .samples
        .into_iter()
        .map(|p| {
            let k = rng.next_index(6);
            p.rotated(k as f64 * SECTOR_ANGLE)
        })
        .collect();
    SampleBatch { samples, n_total }
}
