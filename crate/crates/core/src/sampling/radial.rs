use crate::geometry::{NetworkGeometry, PolarPoint};
use crate::rng::RngStream;

use super::SampleBatch;

/// Distances distributed as the radial law, by acceptance-rejection against
/// a uniform proposal on `[r0, L]` scaled to the peak at `√3 L / 2`.
pub fn sample_radius(geom: &NetworkGeometry, rng: &mut RngStream, n_s: usize) -> SampleBatch<f64> {
    let l = geom.cell_radius_m();
    let r0 = geom.close_in_m();
    let peak = geom.radial_pdf_max();
    let mut batch = SampleBatch::with_capacity(n_s);

    while batch.samples.len() < n_s {
        batch.n_total += 1;
        let u0 = rng.next_uniform();
        let u1 = rng.next_uniform();
        let v = r0 + u1 * (l - r0);
        if geom.radial_pdf(v) / peak > u0 {
            batch.samples.push(v);
        }
    }
    batch
}

/// Polar sector points: radial acceptance-rejection for the distance, then
/// an angle uniform over the admissible set at that distance.
pub fn sample_polar_points(
    geom: &NetworkGeometry,
    rng: &mut RngStream,
    n_s: usize,
) -> SampleBatch<PolarPoint> {
    let radii = sample_radius(geom, rng, n_s);
    let n_total = radii.n_total;
    let samples = radii
        .samples
        .into_iter()
        .map(|r| {
            let range = geom
                .theta_range_given_r(r)
                .expect("accepted radius lies in [r0, L]");
            PolarPoint::new(r, range.at_fraction(rng.next_uniform()))
        })
        .collect();
    SampleBatch { samples, n_total }
}
