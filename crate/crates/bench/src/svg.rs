//! Minimal SVG scatter plot with a fitted line.
//!
//! Output depends only on the inputs; numbers are printed with fixed
//! precision so identical data gives byte-identical files.

use std::fmt::Write;

use crate::fit::LogFit;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return Axis { lo: 0.0, hi: 1.0 };
        }
        let pad = if hi > lo { (hi - lo) * 0.05 } else { 1.0 };
        Axis {
            lo: lo - pad,
            hi: hi + pad,
        }
    }

    fn map(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.lo) / (self.hi - self.lo) * (to - from)
    }
}

/// Scatter of `(ln n, retained)` with the line `intercept + slope * ln n`.
pub fn scaling_plot(points: &[(f64, f64)], fit: Option<&LogFit>) -> String {
    let xs = Axis::new(points.iter().map(|p| p.0));
    let ys = Axis::new(points.iter().map(|p| p.1).chain(std::iter::once(0.0)));
    let px = |x: f64| xs.map(x, MARGIN, WIDTH - MARGIN / 2.0);
    let py = |y: f64| ys.map(y, HEIGHT - MARGIN, MARGIN / 2.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // Axes.
    let (x0, x1) = (MARGIN, WIDTH - MARGIN / 2.0);
    let (y0, y1) = (HEIGHT - MARGIN, MARGIN / 2.0);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" stroke="black" fill="none"/>"#
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = xs.lo + t * (xs.hi - xs.lo);
        let yv = ys.lo + t * (ys.hi - ys.lo);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{xv:.2}</text>"#,
            px(xv),
            y0 + 16.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{yv:.1}</text>"#,
            x0 - 6.0,
            py(yv) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">ln n</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 14 {:.2})">mean retained</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    if let Some(fit) = fit {
        let line = |x: f64| fit.intercept + fit.slope * x;
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-width="1.5"/>"##,
            px(xs.lo),
            py(line(xs.lo)),
            px(xs.hi),
            py(line(xs.hi))
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">fit: {:.4} + {:.4} ln n (rel. residual {:.4})</text>"#,
            x0 + 8.0,
            y1 + 14.0,
            fit.intercept,
            fit.slope,
            fit.relative_residual
        );
    }
    for &(x, y) in points {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#2c3e50"/>"##,
            px(x),
            py(y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_per_point_and_a_line() {
        let pts = [(1.0, 2.0), (2.0, 3.0), (3.0, 4.5)];
        let fit = LogFit {
            intercept: 1.0,
            slope: 1.1,
            residual_norm: 0.1,
            relative_residual: 0.02,
        };
        let svg = scaling_plot(&pts, Some(&fit));
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<line").count(), 1);
    }

    #[test]
    fn deterministic_and_handles_empty() {
        let pts = [(1.0, 2.0), (2.0, 3.0)];
        assert_eq!(scaling_plot(&pts, None), scaling_plot(&pts, None));
        let empty = scaling_plot(&[], None);
        assert!(!empty.contains("NaN") && !empty.contains("inf"));
    }
}
