//! Point files: UTF-8 text, one `x,y` pair per line.
//!
//! Whitespace around either number is allowed. Blank lines and lines whose
//! first non-blank character is `#` are skipped. Points are written with
//! the shortest decimal form that parses back to the same double, so
//! `write_points` followed by `read_points` is the identity.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::geometry::Point2;

#[derive(Debug, Error)]
pub enum PointIoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub fn parse_points(text: &str) -> Result<Vec<Point2>, PointIoError> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        points.push(parse_line(line).map_err(|message| PointIoError::Parse {
            line: idx + 1,
            message,
        })?);
    }
    Ok(points)
}

fn parse_line(line: &str) -> Result<Point2, String> {
    let (xs, ys) = line
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, found {line:?}"))?;
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| format!("invalid number {:?}: {e}", s.trim()))
    };
    let (x, y) = (number(xs)?, number(ys)?);
    Point2::new(x, y).map_err(|e| e.to_string())
}

pub fn read_points(path: impl AsRef<Path>) -> Result<Vec<Point2>, PointIoError> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn write_points_to<W: Write>(out: W, points: &[Point2]) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    for p in points {
        writeln!(out, "{p}")?;
    }
    out.flush()
}

pub fn write_points(path: impl AsRef<Path>, points: &[Point2]) -> io::Result<()> {
    write_points_to(fs::File::create(path)?, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;
    use crate::random::{generate, GenSpec};
    use proptest::prelude::*;

    #[test]
    fn parses_spaced_pair() {
        assert_eq!(parse_points("0.25, 0.75\n").unwrap(), vec![pt(0.25, 0.75)]);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let text = "# header\n\n1,2\n  # indented comment\n-3.5e2 ,4\n";
        assert_eq!(
            parse_points(text).unwrap(),
            vec![pt(1.0, 2.0), pt(-350.0, 4.0)]
        );
    }

    #[test]
    fn bad_number_reports_line() {
        let err = parse_points("1,1\nabc,1\n").unwrap_err();
        assert!(matches!(err, PointIoError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn missing_comma_and_extra_field() {
        assert!(matches!(
            parse_points("1 2").unwrap_err(),
            PointIoError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_points("1,2,3").unwrap_err(),
            PointIoError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn non_finite_rejected() {
        for text in ["inf,0", "0,NaN", "1e400,0"] {
            assert!(matches!(
                parse_points(text).unwrap_err(),
                PointIoError::Parse { line: 1, .. }
            ));
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("points.txt");
        let points = generate(&GenSpec::unit(1000, 3));
        write_points(&path, &points).unwrap();
        assert_eq!(read_points(&path).unwrap(), points);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            read_points("/nonexistent/points.txt"),
            Err(PointIoError::Io(_))
        ));
    }

    proptest! {
        #[test]
        fn text_round_trip(v in prop::collection::vec((-1e300f64..1e300, any::<f64>()), 0..50)) {
            let points: Vec<Point2> = v
                .into_iter()
                .filter_map(|(x, y)| Point2::new(x, y).ok())
                .collect();
            let mut buf = Vec::new();
            write_points_to(&mut buf, &points).unwrap();
            let text = String::from_utf8(buf).unwrap();
            prop_assert_eq!(parse_points(&text).unwrap(), points);
        }
    }
}
