//! Ordinary least squares for `y = intercept + slope * ln n`.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogFit {
    pub intercept: f64,
    pub slope: f64,
    /// Euclidean norm of the residual vector.
    pub residual_norm: f64,
    /// `residual_norm / ||y||`.
    pub relative_residual: f64,
}

/// Fits `ys` against `ln(ns)`. Needs at least two distinct positive `ns`.
pub fn fit_log(ns: &[usize], ys: &[f64]) -> Option<LogFit> {
    assert_eq!(ns.len(), ys.len());
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let k = xs.len() as f64;
    if xs.len() < 2 || ns.contains(&0) {
        return None;
    }
    let mean_x = xs.iter().sum::<f64>() / k;
    let mean_y = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual_norm = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        .sqrt();
    let y_norm = ys.iter().map(|y| y * y).sum::<f64>().sqrt();
    Some(LogFit {
        intercept,
        slope,
        residual_norm,
        relative_residual: if y_norm > 0.0 {
            residual_norm / y_norm
        } else {
            0.0
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_line() {
        let ns = [10, 100, 1000, 10_000];
        let ys: Vec<f64> = ns.iter().map(|&n| 3.0 + 2.5 * (n as f64).ln()).collect();
        let fit = fit_log(&ns, &ys).unwrap();
        assert!((fit.intercept - 3.0).abs() < 1e-12);
        assert!((fit.slope - 2.5).abs() < 1e-12);
        assert!(fit.residual_norm < 1e-12);
    }

    #[test]
    fn residual_matches_direct_sum() {
        let ns = [1, 10, 100, 1000];
        let ys = [0.0, 2.0, 0.0, 2.0];
        let fit = fit_log(&ns, &ys).unwrap();
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        let manual: f64 = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| (y - fit.intercept - fit.slope * x).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!((fit.residual_norm - manual).abs() < 1e-12);
        assert!((fit.relative_residual - manual / 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_log(&[5], &[1.0]).is_none());
        assert!(fit_log(&[5, 5], &[1.0, 2.0]).is_none());
        assert!(fit_log(&[0, 5], &[1.0, 2.0]).is_none());
    }
}
