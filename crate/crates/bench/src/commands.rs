//! The `filter` and `verify` subcommands.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use hullsieve::{
    convex_hull, generate, hulls_equal, preprocess, read_points, write_points, Corner,
    FilterResult, GenSpec, Point2,
};
use serde::Serialize;

use crate::error::CliError;

/// Where the input point set comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    File(PathBuf),
    Generated(GenSpec),
}

impl Input {
    pub fn load(&self) -> Result<Vec<Point2>, CliError> {
        match self {
            Input::File(path) => read_points(path).map_err(|source| CliError::Points {
                path: path.clone(),
                source,
            }),
            Input::Generated(spec) => Ok(generate(spec)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterSummary {
    pub input_size: usize,
    pub retained_size: usize,
    pub total_recursions: usize,
    /// Walk depth per corner label.
    pub corner_depths: BTreeMap<&'static str, usize>,
}

impl FilterSummary {
    pub fn new(input_size: usize, result: &FilterResult) -> Self {
        Self {
            input_size,
            retained_size: result.retained().len(),
            total_recursions: result.total_recursions(),
            corner_depths: Corner::ALL
                .iter()
                .map(|&c| (c.label(), result.depth(c)))
                .collect(),
        }
    }
}

/// Filters `points` and writes the retained set to `out`.
pub fn cmd_filter(points: &[Point2], out: &Path) -> Result<FilterSummary, CliError> {
    let result = preprocess(points);
    write_points(out, result.retained()).map_err(|e| CliError::io(out, e))?;
    Ok(FilterSummary::new(points.len(), &result))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub input_size: usize,
    pub retained_size: usize,
    pub hull_size: usize,
    /// Regression fixture written on mismatch.
    pub fixture: Option<PathBuf>,
}

/// Compares the canonical hull of `points` with that of the filter output.
pub fn check_hull(points: &[Point2]) -> VerifyOutcome {
    let result = preprocess(points);
    let (passed, hull_size) = if points.is_empty() {
        (result.retained().is_empty(), 0)
    } else {
        let full = convex_hull(points).expect("non-empty");
        let kept = convex_hull(result.retained());
        (
            kept.as_ref().is_ok_and(|k| hulls_equal(&full, k)),
            full.len(),
        )
    };
    VerifyOutcome {
        passed,
        input_size: points.len(),
        retained_size: result.retained().len(),
        hull_size,
        fixture: None,
    }
}

/// [`check_hull`], saving the full input under `fixture_dir` on mismatch.
pub fn cmd_verify(points: &[Point2], fixture_dir: &Path) -> Result<VerifyOutcome, CliError> {
    let mut outcome = check_hull(points);
    if !outcome.passed {
        outcome.fixture = Some(save_fixture(points, fixture_dir)?);
    }
    Ok(outcome)
}

fn save_fixture(points: &[Point2], dir: &Path) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .unwrap_or_default();
    let path = dir.join(format!(
        "regression-{}-{:09}.txt",
        now.as_secs(),
        now.subsec_nanos()
    ));
    write_points(&path, points).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}
