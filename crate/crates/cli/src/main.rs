mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use hexfade::lsf::{support_bounds, LsfDensity};
use hexfade::montecarlo::{validate, ValidationConfig, ValidationReport};
use hexfade::sampling::{
    acceptance_rate_cartesian, acceptance_rate_radial, choose_strategy, sample_hexagon_points_par,
    sample_points_par, sample_radius, sample_x,
};
use hexfade::{parallel, NetworkGeometry, RngStream};

use args::{ArCurveArgs, Cli, Command, CurveArgs, DeployArgs, Shape, ValidateArgs};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_STRICT: u8 = 3;

enum Outcome {
    Done,
    ValidationFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ValidationFailed) => {
            eprintln!("validation failed: KS distance not below the 1% critical value");
            ExitCode::from(EXIT_STRICT)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let io = e.chain().any(|c| c.downcast_ref::<io::Error>().is_some());
            ExitCode::from(if io { EXIT_IO } else { EXIT_INVALID })
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Deploy(a) => deploy(&a),
        Command::PdfX(a) => {
            let g = a.model.geometry()?;
            curve(&a, g.close_in_m() / 2.0, g.cell_radius_m(), |x| g.marginal_pdf_x(x))
        }
        Command::PdfR(a) => {
            let g = a.model.geometry()?;
            curve(&a, g.close_in_m(), g.cell_radius_m(), |r| g.radial_pdf(r))
        }
        Command::PdfMeanpl(a) => {
            let m = a.model.channel()?;
            let bp = m.breakpoints_db();
            curve(&a, bp.w0, bp.wl, |w| m.mean_pl_pdf(w))
        }
        Command::PdfLsf(a) => {
            let m = a.model.channel()?;
            let (lo, hi) = support_bounds(&m);
            let d = LsfDensity::new(m);
            let grid = grid(lo, hi, a.grid_points as usize);
            let values = d.pdf_grid(&grid);
            write_curve(&a.output, &grid, &values)
        }
        Command::ArCurve(a) => ar_curve(&a),
        Command::Validate(a) => validate_cmd(&a),
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let mut g: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    g[n - 1] = hi;
    g
}

fn write_curve(path: &Option<PathBuf>, xs: &[f64], ys: &[f64]) -> anyhow::Result<Outcome> {
    let mut out = writer(path)?;
    writeln!(out, "abscissa,density")?;
    for (x, y) in xs.iter().zip(ys) {
        writeln!(out, "{},{}", num(*x), num(*y))?;
    }
    out.flush()?;
    Ok(Outcome::Done)
}

fn curve(a: &CurveArgs, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> anyhow::Result<Outcome> {
    let xs = grid(lo, hi, a.grid_points as usize);
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    write_curve(&a.output, &xs, &ys)
}

fn deploy(a: &DeployArgs) -> anyhow::Result<Outcome> {
    let g = a.model.geometry()?;
    let workers = a.run.workers as usize;
    let batch = match a.shape {
        Shape::Sector => {
            let strategy = choose_strategy(g.rcr())?;
            sample_points_par(&g, a.run.seed, a.n_samples, workers, strategy)
        }
        Shape::Hexagon => sample_hexagon_points_par(&g, a.run.seed, a.n_samples, workers),
    };
    let mut out = writer(&a.output)?;
    writeln!(out, "x_m,y_m")?;
    for p in &batch.samples {
        writeln!(out, "{},{}", num(p.x), num(p.y))?;
    }
    out.flush()?;
    Ok(Outcome::Done)
}

fn ar_curve(a: &ArCurveArgs) -> anyhow::Result<Outcome> {
    if !(a.mu_min > 2.0 && a.mu_min.is_finite() && a.mu_max.is_finite()) {
        bail!("RCR grid must lie in (2, inf); got --mu-min {}", a.mu_min);
    }
    if a.mu_max < a.mu_min {
        bail!("--mu-max {} is below --mu-min {}", a.mu_max, a.mu_min);
    }
    let mus = grid(a.mu_min, a.mu_max, a.grid_points as usize);
    let indexed: Vec<(u64, f64)> = mus.iter().copied().enumerate().map(|(i, m)| (i as u64, m)).collect();
    let rows = parallel::map_slice(&indexed, |&(i, mu)| -> hexfade::Result<[f64; 5]> {
        let g = NetworkGeometry::unit_with_rcr(mu)?;
        let (cart, radial) = if a.n_samples == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let c = sample_x(&g, &mut RngStream::substream(a.seed, 2 * i), a.n_samples);
            let r = sample_radius(&g, &mut RngStream::substream(a.seed, 2 * i + 1), a.n_samples);
            (c.acceptance_ratio(), r.acceptance_ratio())
        };
        Ok([mu, acceptance_rate_cartesian(mu)?, acceptance_rate_radial(mu)?, cart, radial])
    });
    let mut out = writer(&a.output)?;
    writeln!(out, "mu,ar_cartesian,ar_radial,ar_empirical_cartesian,ar_empirical_radial")?;
    for row in rows {
        let row = row?;
        let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(Outcome::Done)
}

fn scatter_path(base: &Path, cell_radius_m: f64) -> PathBuf {
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_L{cell_radius_m}.{}", ext.to_string_lossy()),
        None => format!("{stem}_L{cell_radius_m}"),
    };
    base.with_file_name(name)
}

fn validate_cmd(a: &ValidateArgs) -> anyhow::Result<Outcome> {
    if a.n_samples == 0 {
        bail!("--samples must be at least 1");
    }
    if a.n_bins == 0 {
        bail!("--bins must be at least 1");
    }
    let radii: Vec<Option<f64>> = match &a.sweep_l {
        Some(list) if !list.is_empty() => list.iter().map(|&l| Some(l)).collect(),
        Some(_) => bail!("--sweep-L needs at least one radius"),
        None => vec![None],
    };
    // Every model is checked before any simulation starts.
    let models = radii
        .iter()
        .map(|&l| a.model.channel_with_radius(l))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let config = ValidationConfig::new(a.run.seed, a.n_samples, a.n_bins)
        .with_workers(a.run.workers as usize);

    let mut reports: Vec<ValidationReport> = Vec::with_capacity(models.len());
    for model in &models {
        let run = validate(model, &config)?;
        if let Some(base) = &a.scatter {
            let path = if a.sweep_l.is_some() {
                scatter_path(base, model.geometry.cell_radius_m())
            } else {
                base.clone()
            };
            let mut out = writer(&Some(path))?;
            writeln!(out, "r_m,lsf_db")?;
            for s in &run.simulation.samples {
                writeln!(out, "{},{}", num(s.distance_m), num(s.lsf_db))?;
            }
            out.flush()?;
        }
        reports.push(run.report);
    }

    let mut out = writer(&a.output)?;
    if a.sweep_l.is_some() {
        serde_json::to_writer_pretty(&mut out, &reports)?;
    } else {
        serde_json::to_writer_pretty(&mut out, &reports[0])?;
    }
    writeln!(out)?;
    out.flush()?;

    let all_pass = reports.iter().all(|r| r.ks_pass);
    Ok(if a.strict && !all_pass {
        Outcome::ValidationFailed
    } else {
        Outcome::Done
    })
}
