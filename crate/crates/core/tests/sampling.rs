mod common;

use std::f64::consts::{FRAC_PI_3, PI};

use common::{bisect, golden_section_max, ks_against, ks_critical, TabulatedCdf};
use hexfade::geometry::NetworkGeometry;
use hexfade::sampling::{
    acceptance_rate_cartesian, acceptance_rate_radial, ar_estimator_stats, choose_strategy,
    crossover_rcr, optimal_rcr, sample_distances_par, sample_hexagon_points, sample_points,
    sample_radius, sample_sector_points, sample_x, Strategy,
};
use hexfade::RngStream;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const RCR_GRID: [f64; 6] = [2.1, 3.0, 4.57, 10.0, 17.14, 50.0];

fn unit() -> NetworkGeometry {
    NetworkGeometry::new(1.0, 0.1).unwrap()
}

fn marginal_cdf(g: &NetworkGeometry) -> TabulatedCdf {
    TabulatedCdf::new(|x| g.marginal_pdf_x(x), g.close_in_m() / 2.0, g.cell_radius_m(), 20_000)
}

fn radial_cdf(g: &NetworkGeometry) -> TabulatedCdf {
    TabulatedCdf::new(|r| g.radial_pdf(r), g.close_in_m(), g.cell_radius_m(), 20_000)
}

#[test]
fn abscissa_sampler_matches_marginal() {
    let g = unit();
    let batch = sample_x(&g, &mut RngStream::new(20_240_601), 25_000);
    let cdf = marginal_cdf(&g);
    assert!((cdf.total() - 1.0).abs() < 1e-8);
    let d = ks_against(&batch.samples, |x| cdf.eval(x));
    assert!(d < ks_critical(25_000), "KS = {d}");
}

#[test]
fn abscissa_acceptance_near_optimum() {
    let g = NetworkGeometry::unit_with_rcr(4.57).unwrap();
    let batch = sample_x(&g, &mut RngStream::new(31), 10_000);
    let p = acceptance_rate_cartesian(4.57).unwrap();
    let sd = (p * (1.0 - p) / batch.n_total as f64).sqrt();
    assert!((batch.acceptance_ratio() - 0.529).abs() <= 3.0 * sd + 1e-3);
    assert!((batch.acceptance_ratio() - p).abs() <= 3.0 * sd);
}

#[test]
fn empirical_acceptance_tracks_closed_forms() {
    for (i, mu) in RCR_GRID.iter().copied().enumerate() {
        let g = NetworkGeometry::unit_with_rcr(mu).unwrap();
        let seed = 500 + i as u64;
        let cart = sample_x(&g, &mut RngStream::new(seed), 10_000);
        let stats = ar_estimator_stats(mu, cart.n_total).unwrap();
        assert!(
            (cart.acceptance_ratio() - stats.mean).abs() <= 4.0 * stats.variance.sqrt(),
            "cartesian mu={mu}"
        );
        let rad = sample_radius(&g, &mut RngStream::new(seed), 10_000);
        let p = acceptance_rate_radial(mu).unwrap();
        let sd = (p * (1.0 - p) / rad.n_total as f64).sqrt();
        assert!((rad.acceptance_ratio() - p).abs() <= 4.0 * sd, "radial mu={mu}");
    }
}

#[test]
fn radial_acceptance_at_three() {
    let g = NetworkGeometry::unit_with_rcr(3.0).unwrap();
    let batch = sample_radius(&g, &mut RngStream::new(77), 20_000);
    let p = 0.619_972_199_048_591_5;
    let sd = (p * (1.0 - p) / batch.n_total as f64).sqrt();
    assert!((batch.acceptance_ratio() - p).abs() <= 3.0 * sd);
}

#[test]
fn radial_sampler_matches_radial_law() {
    for mu in [3.0, 10.0, 17.14] {
        let g = NetworkGeometry::unit_with_rcr(mu).unwrap();
        let batch = sample_radius(&g, &mut RngStream::new(41), 25_000);
        let cdf = radial_cdf(&g);
        let d = ks_against(&batch.samples, |r| cdf.eval(r));
        assert!(d < ks_critical(25_000), "mu={mu} KS = {d}");
    }
}

#[test]
fn sector_points_are_uniform() {
    let g = unit();
    let n = 25_000;
    let batch = sample_sector_points(&g, &mut RngStream::new(2718), n);
    assert!(batch.samples.iter().all(|&p| g.contains(p)));

    let h = 1.0 / 12.0;
    let corners_inside = |x0: f64, y0: f64| {
        let s3 = 3f64.sqrt();
        let in_tri = |x: f64, y: f64| y >= 0.0 && y <= s3 * x && y <= s3 * (1.0 - x);
        in_tri(x0, y0)
            && in_tri(x0 + h, y0)
            && in_tri(x0, y0 + h)
            && in_tri(x0 + h, y0 + h)
            && x0.hypot(y0) >= 0.1
    };
    let mut cells = Vec::new();
    for i in 0..12 {
        for j in 0..12 {
            let (x0, y0) = (i as f64 * h, j as f64 * h);
            if corners_inside(x0, y0) {
                cells.push((x0, y0));
            }
        }
    }
    assert!(cells.len() > 20);
    let mut counts = vec![0usize; cells.len() + 1];
    for p in &batch.samples {
        let idx = cells
            .iter()
            .position(|&(x0, y0)| p.x >= x0 && p.x < x0 + h && p.y >= y0 && p.y < y0 + h)
            .unwrap_or(cells.len());
        counts[idx] += 1;
    }
    let cell_expected = n as f64 * h * h / g.far_field_area();
    let rest_expected = n as f64 - cell_expected * cells.len() as f64;
    let mut chi2 = 0.0;
    for (k, &c) in counts.iter().enumerate() {
        let e = if k < cells.len() { cell_expected } else { rest_expected };
        chi2 += (c as f64 - e).powi(2) / e;
    }
    let critical = ChiSquared::new(cells.len() as f64).unwrap().inverse_cdf(0.99);
    assert!(chi2 < critical, "chi2 = {chi2}, critical = {critical}");
}

#[test]
fn sector_distances_match_radial_law() {
    let g = unit();
    let batch = sample_sector_points(&g, &mut RngStream::new(8), 25_000);
    let r: Vec<f64> = batch.samples.iter().map(|p| p.norm()).collect();
    let cdf = radial_cdf(&g);
    let d = ks_against(&r, |x| cdf.eval(x));
    assert!(d < ks_critical(25_000), "KS = {d}");
}

#[test]
fn hexagon_rotations_are_uniform() {
    let g = unit();
    let n = 60_000;
    let batch = sample_hexagon_points(&g, &mut RngStream::new(66), n);
    assert!(batch.samples.iter().all(|&p| g.hexagon_contains(p)));
    let mut freq = [0usize; 6];
    for p in &batch.samples {
        let a = p.y.atan2(p.x).rem_euclid(2.0 * PI);
        freq[((a / FRAC_PI_3) as usize).min(5)] += 1;
    }
    let sd = (n as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
    for (k, &c) in freq.iter().enumerate() {
        assert!((c as f64 - n as f64 / 6.0).abs() <= 3.0 * sd, "sector {k}: {c}");
    }
    let r: Vec<f64> = batch.samples.iter().map(|p| p.norm()).collect();
    let cdf = radial_cdf(&g);
    let d = ks_against(&r, |x| cdf.eval(x));
    assert!(d < ks_critical(n), "KS = {d}");
}

#[test]
fn radial_strategy_points_are_uniform_in_angle() {
    // Under the radial strategy, θ given r is uniform over the admissible
    // set; the abscissa must therefore still follow the marginal.
    let g = NetworkGeometry::new(1.0, 0.2).unwrap();
    let batch = sample_points(&g, &mut RngStream::new(5), 25_000, Strategy::Radial);
    let xs: Vec<f64> = batch.samples.iter().map(|p| p.x).collect();
    let cdf = marginal_cdf(&g);
    let d = ks_against(&xs, |x| cdf.eval(x));
    assert!(d < ks_critical(25_000), "KS = {d}");
}

#[test]
fn strategies_agree_on_distance_law_both_sides_of_crossover() {
    for mu in [5.0, 600.0 / 35.0] {
        let g = NetworkGeometry::unit_with_rcr(mu).unwrap();
        let cdf = radial_cdf(&g);
        for strategy in [Strategy::Radial, Strategy::Cartesian] {
            let batch = sample_distances_par(&g, 123, 25_000, 4, strategy);
            let d = ks_against(&batch.samples, |x| cdf.eval(x));
            assert!(d < ks_critical(25_000), "mu={mu} {strategy}: KS = {d}");
        }
    }
    assert_eq!(choose_strategy(5.0).unwrap(), Strategy::Radial);
    assert_eq!(choose_strategy(600.0 / 35.0).unwrap(), Strategy::Cartesian);
}

#[test]
fn samplers_are_deterministic() {
    let g = unit();
    let a = sample_hexagon_points(&g, &mut RngStream::new(1), 2000);
    let b = sample_hexagon_points(&g, &mut RngStream::new(1), 2000);
    let bits = |v: &[hexfade::CartesianPoint]| -> Vec<(u64, u64)> {
        v.iter().map(|p| (p.x.to_bits(), p.y.to_bits())).collect()
    };
    assert_eq!(bits(&a.samples), bits(&b.samples));
    assert_eq!(a.n_total, b.n_total);
    let a = sample_distances_par(&g, 9, 5000, 3, Strategy::Radial);
    let b = sample_distances_par(&g, 9, 5000, 3, Strategy::Radial);
    assert_eq!(a, b);
}

#[test]
fn optimum_matches_numeric_maximisation() {
    let argmax = golden_section_max(|m| acceptance_rate_cartesian(m).unwrap(), 2.000_001, 100.0, 1e-10);
    assert!((argmax - optimal_rcr()).abs() < 1e-6, "{argmax}");
}

#[test]
fn crossover_matches_bisection() {
    let diff = |m: f64| acceptance_rate_cartesian(m).unwrap() - acceptance_rate_radial(m).unwrap();
    let root = bisect(diff, 2.000_001, 100.0, 1e-12);
    assert!((root - crossover_rcr()).abs() < 1e-6);
    assert!(diff(crossover_rcr()).abs() < 1e-9);
}

#[test]
fn acceptance_envelope_and_monotonicity() {
    let grid: Vec<f64> = (1..=48_000).map(|i| 2.0 + i as f64 * 1e-3).collect();
    let cart: Vec<f64> = grid.iter().map(|&m| acceptance_rate_cartesian(m).unwrap()).collect();
    assert!(cart.iter().all(|&p| p > 0.465 && p <= 0.5290));
    let radial: Vec<f64> = grid.iter().map(|&m| acceptance_rate_radial(m).unwrap()).collect();
    assert!(radial.windows(2).all(|w| w[1] < w[0]));
}
