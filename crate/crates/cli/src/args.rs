use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hexfade::channel::ieee_802_20;
use hexfade::{ChannelModel, NetworkGeometry};

#[derive(Debug, Parser)]
#[command(name = "hexfade", version, about = "Hexagonal-cell geometry, sampling and large-scale fading densities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random node positions in the sector or the whole hexagon (CSV `x_m,y_m`).
    Deploy(DeployArgs),
    /// Density of the node abscissa over [r0/2, L].
    PdfX(CurveArgs),
    /// Density of the node distance over [r0, L].
    PdfR(CurveArgs),
    /// Density of the mean path loss over [w0, wL].
    PdfMeanpl(CurveArgs),
    /// Density of the large-scale fading over the 3σ reporting window.
    PdfLsf(CurveArgs),
    /// Closed-form and empirical acceptance rates over a grid of RCR values.
    ArCurve(ArCurveArgs),
    /// Monte-Carlo validation of the fading density (JSON report).
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Urban macrocell: α = 34.5 dB, β = 35 dB, σ = 10 dB, r0 = 35 m, L = 600 m.
    #[value(name = "ieee80220")]
    Ieee80220,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Sector,
    Hexagon,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Parameter preset; explicit flags override its values.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Cell radius L in metres.
    #[arg(long = "cell-radius", short = 'L')]
    pub cell_radius_m: Option<f64>,
    /// Close-in (far-field exclusion) radius r0 in metres.
    #[arg(long = "close-in")]
    pub close_in_m: Option<f64>,
    /// Path-loss intercept α in dB.
    #[arg(long = "alpha", allow_negative_numbers = true)]
    pub alpha_db: Option<f64>,
    /// Path-loss slope β in dB per decade.
    #[arg(long = "beta")]
    pub beta_db: Option<f64>,
    /// Shadowing standard deviation σ in dB.
    #[arg(long = "sigma")]
    pub sigma_psi_db: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Seed of the random stream.
    #[arg(long, env = "HEXFADE_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Number of substreams the work is split into. Results depend on the
    /// seed and this count, not on the number of threads.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

#[derive(Debug, Clone, Args)]
pub struct DeployArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Number of points.
    #[arg(short = 'n', long = "samples", default_value_t = 10_000)]
    pub n_samples: usize,
    #[arg(long, value_enum, default_value_t = Shape::Sector)]
    pub shape: Shape,
    /// Output file (standard output when omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of grid points.
    #[arg(long = "grid", default_value_t = 500, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid_points: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ArCurveArgs {
    /// Seed of the random stream; each RCR uses its own substreams.
    #[arg(long, env = "HEXFADE_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Smallest RCR on the grid (must exceed 2).
    #[arg(long = "mu-min", default_value_t = 2.1)]
    pub mu_min: f64,
    /// Largest RCR on the grid.
    #[arg(long = "mu-max", default_value_t = 30.0)]
    pub mu_max: f64,
    /// Number of grid points.
    #[arg(long = "grid", default_value_t = 280, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid_points: u64,
    /// Accepted samples per RCR for the empirical columns.
    #[arg(short = 'n', long = "samples", default_value_t = 10_000)]
    pub n_samples: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(short = 'n', long = "samples", default_value_t = 10_000)]
    pub n_samples: usize,
    /// Histogram bins.
    #[arg(long = "bins", default_value_t = 100)]
    pub n_bins: usize,
    /// Run once per cell radius in this list; the report becomes an array.
    #[arg(long = "sweep-L", value_delimiter = ',')]
    pub sweep_l: Option<Vec<f64>>,
    /// Also write `r_m,lsf_db` pairs here. With a sweep, `_L<radius>` is
    /// appended to the file stem.
    #[arg(long)]
    pub scatter: Option<PathBuf>,
    /// Exit with status 3 if any KS distance reaches its critical value.
    #[arg(long)]
    pub strict: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

impl ModelArgs {
    fn pick(&self, value: Option<f64>, preset: f64, flag: &str) -> anyhow::Result<f64> {
        match (value, self.preset) {
            (Some(v), _) => Ok(v),
            (None, Some(Preset::Ieee80220)) => Ok(preset),
            (None, None) => Err(anyhow::anyhow!("missing --{flag} (or use --preset ieee80220)")),
        }
    }

    pub fn geometry(&self) -> anyhow::Result<NetworkGeometry> {
        let l = self.pick(self.cell_radius_m, ieee_802_20::CELL_RADIUS_MIN_M, "cell-radius")?;
        let r0 = self.pick(self.close_in_m, ieee_802_20::CLOSE_IN_M, "close-in")?;
        Ok(NetworkGeometry::new(l, r0)?)
    }

    pub fn channel(&self) -> anyhow::Result<ChannelModel> {
        self.channel_with_radius(None)
    }

    /// Full channel model, optionally forcing the cell radius.
    pub fn channel_with_radius(&self, cell_radius_m: Option<f64>) -> anyhow::Result<ChannelModel> {
        let l = match cell_radius_m {
            Some(l) => l,
            None => self.pick(self.cell_radius_m, ieee_802_20::CELL_RADIUS_MIN_M, "cell-radius")?,
        };
        let model = ChannelModel::from_values(
            l,
            self.pick(self.close_in_m, ieee_802_20::CLOSE_IN_M, "close-in")?,
            self.pick(self.alpha_db, ieee_802_20::ALPHA_DB, "alpha")?,
            self.pick(self.beta_db, ieee_802_20::BETA_DB, "beta")?,
            self.pick(self.sigma_psi_db, ieee_802_20::SIGMA_PSI_DB, "sigma")?,
        )?;
        if !model.pathloss.has_physical_exponent() {
            eprintln!(
                "warning: path-loss exponent β/10 = {} is not above 1",
                model.pathloss.exponent()
            );
        }
        Ok(model)
    }
}
