//! Test-only numerical oracles, written independently of the library's
//! quadrature and root-finding paths.
#![allow(dead_code)]

use hexfade::channel::ChannelModel;

/// Adaptive Simpson with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Simpson over consecutive breakpoints.
pub fn simpson_pieces<F: Fn(f64) -> f64>(f: &F, points: &[f64], tol: f64) -> f64 {
    points
        .windows(2)
        .map(|w| simpson(f, w[0], w[1], tol / points.len() as f64))
        .sum()
}

/// Golden-section search for the maximiser of a unimodal function.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    while (b - a).abs() > tol {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    0.5 * (a + b)
}

/// Bisection for a sign change of `f` on `[a, b]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    assert!(fa * f(b) <= 0.0, "no sign change on [{a}, {b}]");
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if (fm <= 0.0) == (fa <= 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// CDF tabulated by cumulative Simpson on a fine grid, linearly interpolated.
pub struct TabulatedCdf {
    xs: Vec<f64>,
    cs: Vec<f64>,
}

impl TabulatedCdf {
    pub fn new<F: Fn(f64) -> f64>(pdf: F, a: f64, b: f64, n: usize) -> Self {
        let xs: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
        let mut cs = vec![0.0; n + 1];
        for i in 1..=n {
            cs[i] = cs[i - 1] + simpson(&pdf, xs[i - 1], xs[i], 1e-13);
        }
        Self { xs, cs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return 0.0;
        }
        let n = self.xs.len() - 1;
        if x >= self.xs[n] {
            return self.cs[n];
        }
        let h = self.xs[1] - self.xs[0];
        let i = (((x - self.xs[0]) / h) as usize).min(n - 1);
        let t = (x - self.xs[i]) / h;
        self.cs[i] + t * (self.cs[i + 1] - self.cs[i])
    }

    pub fn total(&self) -> f64 {
        *self.cs.last().unwrap()
    }
}

/// One-sample KS distance of `values` against `cdf`, computed from scratch.
pub fn ks_against<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

pub fn ks_critical(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

pub fn macrocell(cell_radius_m: f64) -> ChannelModel {
    ChannelModel::ieee_802_20(cell_radius_m).unwrap()
}

/// Parameter sets used for closed-form vs convolution checks.
pub fn equivalence_models() -> Vec<(String, ChannelModel)> {
    let mut v: Vec<(String, ChannelModel)> = [600.0, 1500.0, 2500.0, 3500.0]
        .iter()
        .map(|&l| (format!("macrocell L={l}"), macrocell(l)))
        .collect();
    for sigma in [1.0, 6.0, 10.0] {
        v.push((
            format!("unit cell sigma={sigma}"),
            ChannelModel::from_values(1.0, 0.1, 0.0, 20.0, sigma).unwrap(),
        ));
    }
    v
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}
