use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hullsieve::{BoundingBox, Point2};

#[derive(Debug, Parser)]
#[command(
    name = "hullsieve",
    version,
    about = "Extreme-point elimination filter: run, verify, measure"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter a point set and write the retained points.
    Filter(PointSetArgs),
    /// Check that filtering leaves the convex hull unchanged.
    Verify(VerifyArgs),
    /// Retained-set size against n, with a logarithmic fit and SVG plot.
    Scaling(ScalingArgs),
    /// Median filter time against n.
    Bench(BenchArgs),
    /// Monte Carlo checks of the quadrilateral, corner and inner-triangle expectations.
    Lemmas(LemmaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Generation box as `minx,miny,maxx,maxy`.
    #[arg(
        long = "box",
        value_name = "MINX,MINY,MAXX,MAXY",
        default_value = "0,0,1,1"
    )]
    pub bbox: BoxArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PointSetArgs {
    /// Point file; when absent, `--n` points are generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub points: PointSetArgs,
    /// Directory receiving regression fixtures on mismatch.
    #[arg(long, default_value = ".")]
    pub fixture_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct Sizes {
    /// Comma-separated sizes.
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Powers of two `2^lo..=2^hi`, as `lo..hi`.
    #[arg(long, conflicts_with = "n")]
    pub pow2: Option<Pow2Range>,
}

impl Sizes {
    pub fn resolve(&self, default: Pow2Range) -> Vec<usize> {
        if !self.n.is_empty() {
            self.n.clone()
        } else {
            self.pow2.unwrap_or(default).sizes()
        }
    }
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[command(flatten)]
    pub sizes: Sizes,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value = "scaling.csv")]
    pub out: PathBuf,
    /// Plot path; defaults to `--out` with an `.svg` extension.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub sizes: Sizes,
    #[arg(long, default_value_t = 11)]
    pub trials: usize,
    #[arg(long, default_value = "bench.csv")]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    /// Samples per area experiment (at least 1000).
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    /// Points per counting trial.
    #[arg(long, default_value_t = 1000)]
    pub count_n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub count_trials: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxArg(pub BoundingBox);

impl FromStr for BoxArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        let [x0, y0, x1, y1] = v[..] else {
            return Err(format!(
                "expected 4 comma-separated numbers, got {}",
                v.len()
            ));
        };
        let corner = |x, y| Point2::new(x, y).map_err(|e| e.to_string());
        BoundingBox::new(corner(x0, y0)?, corner(x1, y1)?)
            .map(BoxArg)
            .map_err(|_| format!("min corner ({x0},{y0}) exceeds max corner ({x1},{y1})"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pow2Range {
    pub lo: u32,
    pub hi: u32,
}

impl Pow2Range {
    pub fn sizes(self) -> Vec<usize> {
        (self.lo..=self.hi).map(|k| 1usize << k).collect()
    }
}

impl FromStr for Pow2Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected `lo..hi`, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi || hi > 40 {
            return Err(format!("invalid exponent range {lo}..{hi}"));
        }
        Ok(Pow2Range { lo, hi })
    }
}
