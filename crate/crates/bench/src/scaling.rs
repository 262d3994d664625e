//! Retained-set size as a function of `n`.

use std::time::Instant;

use hullsieve::stats::Moments;
use hullsieve::{convex_hull, generate, hulls_equal, preprocess, trial_seed, BoundingBox, GenSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::fit::{fit_log, LogFit};
use crate::svg::scaling_plot;

/// One CSV row per `n`. `mean_wall_time` is the only non-reproducible field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub trials: usize,
    pub mean_retained: f64,
    pub std_retained: f64,
    pub mean_depth_per_corner: f64,
    /// Seconds.
    pub mean_wall_time: f64,
    pub hull_size_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConfig {
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub bbox: BoundingBox,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// `mean_retained = intercept + slope * ln n`; absent with fewer than
    /// two distinct positive sizes.
    pub fit: Option<LogFit>,
    /// Trials in which the filter changed the hull. Always expected to be 0.
    pub hull_mismatches: usize,
}

impl ScalingReport {
    pub fn svg(&self) -> String {
        let points: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.n > 0)
            .map(|r| ((r.n as f64).ln(), r.mean_retained))
            .collect();
        scaling_plot(&points, self.fit.as_ref())
    }
}

struct TrialOutcome {
    retained: usize,
    depth_per_corner: f64,
    seconds: f64,
    hull_size: usize,
    hull_matches: bool,
}

fn run_trial(n: usize, bbox: BoundingBox, seed: u64) -> TrialOutcome {
    let points = generate(&GenSpec { n, bbox, seed });
    let start = Instant::now();
    let result = preprocess(&points);
    let seconds = start.elapsed().as_secs_f64();
    let (hull_size, hull_matches) = match convex_hull(&points) {
        Ok(full) => {
            let kept = convex_hull(result.retained()).expect("retained is non-empty");
            (full.len(), hulls_equal(&full, &kept))
        }
        Err(_) => (0, result.retained().is_empty()),
    };
    TrialOutcome {
        retained: result.retained().len(),
        depth_per_corner: result.total_recursions() as f64 / 4.0,
        seconds,
        hull_size,
        hull_matches,
    }
}

/// Trial `i` at every size uses seed `seed + i`. Trials run in parallel but
/// are folded in index order, so all fields except the wall time are
/// reproducible.
pub fn run_scaling(config: &ScalingConfig) -> ScalingReport {
    let mut rows = Vec::with_capacity(config.n_list.len());
    let mut hull_mismatches = 0;
    for &n in &config.n_list {
        let outcomes: Vec<TrialOutcome> = (0..config.trials as u64)
            .into_par_iter()
            .map(|i| run_trial(n, config.bbox, trial_seed(config.seed, i)))
            .collect();
        let mut retained = Moments::default();
        let (mut depth, mut time, mut hull) = (0.0, 0.0, 0.0);
        for o in &outcomes {
            retained.push(o.retained as f64);
            depth += o.depth_per_corner;
            time += o.seconds;
            hull += o.hull_size as f64;
            hull_mismatches += usize::from(!o.hull_matches);
        }
        let k = outcomes.len().max(1) as f64;
        rows.push(ScalingRow {
            n,
            trials: config.trials,
            mean_retained: retained.mean(),
            std_retained: retained.variance().sqrt(),
            mean_depth_per_corner: depth / k,
            mean_wall_time: time / k,
            hull_size_mean: hull / k,
        });
    }
    let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.mean_retained).collect();
    ScalingReport {
        fit: fit_log(&ns, &ys),
        rows,
        hull_mismatches,
    }
}
