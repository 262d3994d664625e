//! Monte Carlo checks of the expectation lemmas behind the filter.
//!
//! Pick one uniform point on each edge of an `a x b` box: `X` along the top
//! edge and `T` along the bottom edge (both from the left, `U(0, a)`), `Y`
//! along the left edge and `Z` along the right edge (both from the top,
//! `U(0, b)`). Joining adjacent picks gives a quadrilateral with area
//!
//! ```text
//! N = ab - (XY + (a - X)Z + (b - Y)T + (a - T)(b - Z)) / 2
//! ```
//!
//! and four right-triangle corners; the top-left one has area `Q = XY/2`.
//! `E[N] = ab/2` and `E[Q] = ab/8`. For a right triangle with legs `a` and
//! `b`, joining uniform points on the two legs cuts off an inner triangle
//! of area `H = X1 Y1 / 2` with `E[H] = ab/8`, a quarter of the triangle.
//!
//! Every experiment seeds trial `i` with `base_seed + i` and folds per-trial
//! values into [`Moments`] in a fixed chunk order, so reports are
//! bit-reproducible even though chunks run in parallel.

use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::filter::Corner;
use crate::geometry::{bounding_box, BoundingBox, Point2};
use crate::hull::{contains_point, convex_hull, HullPolygon};
use crate::random::{generate_with, rng_from_seed, trial_seed, uniform_in};

/// Largest accepted `|z_score|`.
pub const Z_THRESHOLD: f64 = 3.0;

const CHUNK: u64 = 1024;

/// Streaming count, mean and sum of squared deviations (Welford), mergeable
/// with Chan's pairwise update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 +=
            other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero with fewer than two values.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn report(&self, experiment: impl Into<String>, expected: f64) -> TrialReport {
        let variance = self.variance();
        let std_error = (variance / self.count.max(1) as f64).sqrt();
        let z_score = if std_error > 0.0 {
            (self.mean - expected) / std_error
        } else {
            0.0
        };
        TrialReport {
            experiment: experiment.into(),
            trials: self.count,
            mean: self.mean,
            variance,
            std_error,
            expected,
            z_score,
        }
    }
}

/// One row of Monte Carlo output. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub experiment: String,
    pub trials: u64,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    pub expected: f64,
    /// `(mean - expected) / std_error`, or 0 when `std_error` is 0.
    pub z_score: f64,
}

impl TrialReport {
    pub fn passes(&self) -> bool {
        self.z_score.abs() <= Z_THRESHOLD
    }
}

/// The four edge picks `X, Y, Z, T` of a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeDraw {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl EdgeDraw {
    /// Draws `X, Y, Z, T` in that order.
    pub fn sample<R: RngCore + ?Sized>(a: f64, b: f64, rng: &mut R) -> Self {
        let x = uniform_in(rng, 0.0, a);
        let y = uniform_in(rng, 0.0, b);
        let z = uniform_in(rng, 0.0, b);
        let t = uniform_in(rng, 0.0, a);
        Self { x, y, z, t }
    }

    pub fn quadrilateral_area(&self, a: f64, b: f64) -> f64 {
        let [tr, br, bl, tl] = self.corner_areas(a, b);
        a * b - (tl + tr + bl + br)
    }

    /// Corner triangle areas in [`Corner::ALL`] order.
    pub fn corner_areas(&self, a: f64, b: f64) -> [f64; 4] {
        let Self { x, y, z, t } = *self;
        [
            0.5 * ((a - x) * z),
            0.5 * ((a - t) * (b - z)),
            0.5 * ((b - y) * t),
            0.5 * (x * y),
        ]
    }

    /// Quadrilateral vertices in `bbox`: top, right, bottom, left picks.
    pub fn quadrilateral(&self, bbox: &BoundingBox) -> [Point2; 4] {
        let (lo, hi) = (bbox.min(), bbox.max());
        let p = |x: f64, y: f64| Point2::from_finite(x, y);
        [
            p(lo.x() + self.x, hi.y()),
            p(hi.x(), hi.y() - self.z),
            p(lo.x() + self.t, lo.y()),
            p(lo.x(), hi.y() - self.y),
        ]
    }

    /// Right triangle cut from `bbox` at `corner`: box corner, then the two
    /// adjacent edge picks.
    pub fn corner_triangle(&self, bbox: &BoundingBox, corner: Corner) -> [Point2; 3] {
        let (lo, hi) = (bbox.min(), bbox.max());
        let [top, right, bottom, left] = self.quadrilateral(bbox);
        let p = |x: f64, y: f64| Point2::from_finite(x, y);
        match corner {
            Corner::TopRight => [p(hi.x(), hi.y()), top, right],
            Corner::BottomRight => [p(hi.x(), lo.y()), right, bottom],
            Corner::BottomLeft => [p(lo.x(), lo.y()), bottom, left],
            Corner::TopLeft => [p(lo.x(), hi.y()), left, top],
        }
    }
}

/// One sample of the quadrilateral area `N`.
pub fn quadrilateral_area_sample<R: RngCore + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    EdgeDraw::sample(a, b, rng).quadrilateral_area(a, b)
}

/// One sample of the top-left corner area `Q = XY/2`.
pub fn corner_area_sample<R: RngCore + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    let x = uniform_in(rng, 0.0, a);
    let y = uniform_in(rng, 0.0, b);
    0.5 * x * y
}

/// One sample of the inner-triangle area `H = X1 Y1 / 2` for a right
/// triangle with legs `a` and `b`.
pub fn inner_triangle_area_sample<R: RngCore + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    let x1 = uniform_in(rng, 0.0, a);
    let y1 = uniform_in(rng, 0.0, b);
    0.5 * x1 * y1
}

/// Runs `trial(i, rng)` for `i in 0..trials`, each with its own seeded RNG,
/// and folds the values in trial order per chunk, chunks in index order.
fn fold_trials<const K: usize, F>(trials: u64, seed: u64, trial: F) -> [Moments; K]
where
    F: Fn(&mut crate::random::ExperimentRng) -> [f64; K] + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    let partial: Vec<[Moments; K]> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = [Moments::default(); K];
            for i in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let mut rng = rng_from_seed(trial_seed(seed, i));
                for (m, v) in acc.iter_mut().zip(trial(&mut rng)) {
                    m.push(v);
                }
            }
            acc
        })
        .collect();
    let mut total = [Moments::default(); K];
    for part in &partial {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AreaExperiment {
    Quadrilateral,
    Corner,
    InnerTriangle,
}

impl AreaExperiment {
    pub const ALL: [AreaExperiment; 3] = [
        AreaExperiment::Quadrilateral,
        AreaExperiment::Corner,
        AreaExperiment::InnerTriangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AreaExperiment::Quadrilateral => "quadrilateral_area",
            AreaExperiment::Corner => "corner_area",
            AreaExperiment::InnerTriangle => "inner_triangle_area",
        }
    }

    /// Analytic mean: `ab/2` for the quadrilateral, `ab/8` for the other two.
    pub fn expected(self, a: f64, b: f64) -> f64 {
        match self {
            AreaExperiment::Quadrilateral => a * b / 2.0,
            AreaExperiment::Corner | AreaExperiment::InnerTriangle => a * b / 8.0,
        }
    }

    pub fn sample<R: RngCore + ?Sized>(self, a: f64, b: f64, rng: &mut R) -> f64 {
        match self {
            AreaExperiment::Quadrilateral => quadrilateral_area_sample(a, b, rng),
            AreaExperiment::Corner => corner_area_sample(a, b, rng),
            AreaExperiment::InnerTriangle => inner_triangle_area_sample(a, b, rng),
        }
    }
}

pub fn area_experiment(
    kind: AreaExperiment,
    a: f64,
    b: f64,
    trials: u64,
    seed: u64,
) -> TrialReport {
    let [m] = fold_trials(trials, seed, |rng| [kind.sample(a, b, rng)]);
    m.report(kind.name(), kind.expected(a, b))
}

/// Which box the edge picks of a counting trial are placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountBox {
    /// The unit square the points are drawn from. All `n` points are
    /// uniform in the box, so the expected counts are `n/2` and `n/8`.
    Support,
    /// The tight bounding box of the drawn points. Its four extreme points
    /// sit on the box edges and are never strictly inside the
    /// quadrilateral, which shifts the expectations to `(n - 4)/2` for the
    /// quadrilateral and `(n - 4)/8 + 1` for each corner.
    Tight,
}

impl CountBox {
    pub fn expected_quadrilateral(self, n: usize) -> f64 {
        match self {
            CountBox::Support => n as f64 / 2.0,
            CountBox::Tight => (n as f64 - 4.0) / 2.0,
        }
    }

    pub fn expected_corner(self, n: usize) -> f64 {
        match self {
            CountBox::Support => n as f64 / 8.0,
            CountBox::Tight => (n as f64 - 4.0) / 8.0 + 1.0,
        }
    }
}

/// Points of one trial falling in each region (boundaries inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionCounts {
    pub quadrilateral: usize,
    /// In [`Corner::ALL`] order.
    pub corners: [usize; 4],
}

fn polygon(vertices: &[Point2]) -> HullPolygon {
    convex_hull(vertices).expect("non-empty vertex list")
}

pub fn count_regions(points: &[Point2], bbox: &BoundingBox, draw: &EdgeDraw) -> RegionCounts {
    let quad = polygon(&draw.quadrilateral(bbox));
    let corners = Corner::ALL.map(|c| polygon(&draw.corner_triangle(bbox, c)));
    let mut counts = RegionCounts {
        quadrilateral: 0,
        corners: [0; 4],
    };
    for &p in points {
        if contains_point(&quad, p) {
            counts.quadrilateral += 1;
        }
        for (count, tri) in counts.corners.iter_mut().zip(&corners) {
            if contains_point(tri, p) {
                *count += 1;
            }
        }
    }
    counts
}

/// Counting trials: `n` uniform points in the unit square, one edge pick
/// per side of the chosen box, counts per region. Returns the quadrilateral
/// report followed by the four corner reports.
pub fn count_experiment(n: usize, trials: u64, seed: u64, mode: CountBox) -> Vec<TrialReport> {
    let unit = BoundingBox::unit_square();
    let moments = fold_trials(trials, seed, |rng| {
        let points = generate_with(rng, n, &unit);
        let bbox = match mode {
            CountBox::Support => unit,
            CountBox::Tight => bounding_box(&points).unwrap_or(unit),
        };
        let draw = EdgeDraw::sample(bbox.width(), bbox.height(), rng);
        let c = count_regions(&points, &bbox, &draw);
        [
            c.quadrilateral as f64,
            c.corners[0] as f64,
            c.corners[1] as f64,
            c.corners[2] as f64,
            c.corners[3] as f64,
        ]
    });
    let mut reports =
        vec![moments[0].report("count_quadrilateral", mode.expected_quadrilateral(n))];
    for (corner, m) in Corner::ALL.into_iter().zip(&moments[1..]) {
        reports.push(m.report(format!("count_corner_{corner}"), mode.expected_corner(n)));
    }
    reports
}

/// Outcome of an experiment run under the one-retry policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checked {
    pub reports: Vec<TrialReport>,
    /// Seed of the run the reports come from.
    pub seed: u64,
    pub retried: bool,
    pub passed: bool,
}

/// Runs `experiment(seed)`; if any report misses [`Z_THRESHOLD`] it is run
/// once more with seed `seed + trials`, the first seed whose trial streams
/// do not overlap the first run.
pub fn with_retry<F>(seed: u64, trials: u64, experiment: F) -> Checked
where
    F: Fn(u64) -> Vec<TrialReport>,
{
    let reports = experiment(seed);
    if reports.iter().all(TrialReport::passes) {
        return Checked {
            reports,
            seed,
            retried: false,
            passed: true,
        };
    }
    let retry_seed = seed.wrapping_add(trials);
    let reports = experiment(retry_seed);
    let passed = reports.iter().all(TrialReport::passes);
    Checked {
        reports,
        seed: retry_seed,
        retried: true,
        passed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaConfig {
    /// Samples per area experiment.
    pub trials: u64,
    pub count_n: usize,
    pub count_trials: u64,
    pub seed: u64,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        Self {
            trials: 1_000_000,
            count_n: 1000,
            count_trials: 10_000,
            seed: 42,
        }
    }
}

/// All lemma experiments on the unit box: the three area experiments and
/// the point-count experiment, each under the retry policy.
pub fn run_lemmas(config: &LemmaConfig) -> Vec<Checked> {
    let mut out: Vec<Checked> = AreaExperiment::ALL
        .into_iter()
        .map(|kind| {
            with_retry(config.seed, config.trials, |s| {
                vec![area_experiment(kind, 1.0, 1.0, config.trials, s)]
            })
        })
        .collect();
    out.push(with_retry(config.seed, config.count_trials, |s| {
        count_experiment(config.count_n, config.count_trials, s, CountBox::Support)
    }));
    out
}
