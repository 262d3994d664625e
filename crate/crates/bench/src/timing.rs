//! Wall-clock timing of the filter alone.

use std::time::Instant;

use hullsieve::{generate, preprocess, trial_seed, BoundingBox, GenSpec};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    /// Seconds.
    pub median_time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub bbox: BoundingBox,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// `median_time[i + 1] / median_time[i]` for consecutive sizes.
    pub ratios: Vec<f64>,
    /// Retained-set size of every timed trial, per size.
    pub retained: Vec<Vec<usize>>,
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

/// Times `preprocess` on `trials` fresh inputs per size (seed
/// `seed + i` for trial `i`), sequentially on the calling thread. Point
/// generation is not timed. Each size starts with one untimed warm-up run
/// on the first trial's input.
pub fn run_bench(config: &BenchConfig) -> BenchReport {
    let mut rows = Vec::new();
    let mut retained = Vec::new();
    for &n in &config.n_list {
        let mut times = Vec::with_capacity(config.trials);
        let mut counts = Vec::with_capacity(config.trials);
        for i in 0..config.trials as u64 {
            let points = generate(&GenSpec {
                n,
                bbox: config.bbox,
                seed: trial_seed(config.seed, i),
            });
            if i == 0 {
                std::hint::black_box(preprocess(&points));
            }
            let start = Instant::now();
            let result = preprocess(std::hint::black_box(&points));
            times.push(start.elapsed().as_secs_f64());
            counts.push(result.retained().len());
        }
        rows.push(BenchRow {
            n,
            median_time: median(&mut times),
        });
        retained.push(counts);
    }
    let ratios = rows
        .windows(2)
        .map(|w| {
            if w[0].median_time > 0.0 {
                w[1].median_time / w[0].median_time
            } else {
                f64::INFINITY
            }
        })
        .collect();
    BenchReport {
        rows,
        ratios,
        retained,
    }
}
