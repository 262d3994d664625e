//! Planar primitives: points, orientation, side-of-line tests, extreme
//! points and bounding boxes.
//!
//! # Orientation evaluation order
//!
//! [`orientation`] evaluates
//!
//! ```text
//! det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
//! ```
//!
//! The four differences are rounded once each in IEEE-754 double precision
//! in the order written. The determinant of those rounded differences is
//! first estimated in plain floating point; when the estimate is within a
//! static forward-error bound of zero, the two products are expanded into
//! exact two-term expansions (via fused multiply-add) and the sign of their
//! exact difference is taken. For integer coordinates with magnitude at most
//! 2^26 the differences are exact, so the returned sign is the exact sign of
//! the determinant. For other inputs the result is deterministic across runs
//! and platforms, but reflects the rounded differences.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("operation requires a non-empty point set")]
    EmptySet,
    #[error("line through coincident points {0} and {0} is undefined")]
    DegenerateLine(Point2),
}

/// A point in the plane with finite coordinates.
///
/// Negative zero is normalized to positive zero on construction so that
/// equality, ordering and hashing agree with numeric equality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    x: f64,
    y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self::from_finite(x, y))
        } else {
            Err(GeometryError::NonFinite { x, y })
        }
    }

    /// Caller guarantees both coordinates are finite.
    pub(crate) fn from_finite(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        // `+ 0.0` maps -0.0 to 0.0 and leaves every other value unchanged.
        Self {
            x: x + 0.0,
            y: y + 0.0,
        }
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }
}

impl TryFrom<(f64, f64)> for Point2 {
    type Error = GeometryError;

    fn try_from((x, y): (f64, f64)) -> Result<Self, Self::Error> {
        Point2::new(x, y)
    }
}

// Coordinates are finite, so `total_cmp` is a total order consistent with `==`.
impl Eq for Point2 {}

impl Ord for Point2 {
    /// Lexicographic: x first, then y.
    fn cmp(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

impl PartialOrd for Point2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Point2 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.to_bits().hash(state);
        self.y.to_bits().hash(state);
    }
}

impl fmt::Display for Point2 {
    /// Shortest round-trip decimal form, `x,y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Unit roundoff of f64.
const EPSILON: f64 = f64::EPSILON * 0.5;
/// Forward-error bound on `l - r` relative to `|l| + |r|`, where `l` and `r`
/// are rounded products of already-rounded differences.
const ORIENT_ERR_BOUND: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;

/// Orientation of the triangle `p, q, r`. See the module docs for the
/// evaluation order and the exactness contract.
pub fn orientation(p: Point2, q: Point2, r: Point2) -> Orientation {
    let dx1 = q.x - p.x;
    let dy1 = q.y - p.y;
    let dx2 = r.x - p.x;
    let dy2 = r.y - p.y;

    let left = dx1 * dy2;
    let right = dy1 * dx2;
    let det = left - right;
    let bound = ORIENT_ERR_BOUND * (left.abs() + right.abs());

    let sign = if det > bound || -det > bound {
        det
    } else {
        exact_det_sign(dx1, dy2, dy1, dx2)
    };

    if sign > 0.0 {
        Orientation::CounterClockwise
    } else if sign < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Sign (as -1, 0 or 1) of `a * b - c * d`, computed exactly.
fn exact_det_sign(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let (ab, ab_err) = two_product(a, b);
    let (cd, cd_err) = two_product(c, d);
    let mut expansion = Expansion::default();
    for term in [ab_err, -cd_err, ab, -cd] {
        expansion.grow(term);
    }
    expansion.sign()
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

/// Nonoverlapping floating-point expansion with components in increasing
/// magnitude. Sized for the four terms of a 2x2 determinant.
#[derive(Default)]
struct Expansion {
    parts: [f64; 4],
    len: usize,
}

impl Expansion {
    fn grow(&mut self, b: f64) {
        let mut q = b;
        let mut out = 0;
        for i in 0..self.len {
            let (s, h) = two_sum(q, self.parts[i]);
            q = s;
            if h != 0.0 {
                self.parts[out] = h;
                out += 1;
            }
        }
        if q != 0.0 {
            self.parts[out] = q;
            out += 1;
        }
        self.len = out;
    }

    fn sign(&self) -> f64 {
        match self.len {
            0 => 0.0,
            n => self.parts[n - 1].signum(),
        }
    }
}

/// Whether `p` lies strictly on the left of the directed line `a -> b`.
///
/// Chords of the elimination filter are always passed in clockwise order
/// around the point set (`top -> right -> bottom -> left -> top`), so the
/// left side is the outward side for every corner. Points on the line are
/// not above it.
pub fn is_strictly_above(p: Point2, a: Point2, b: Point2) -> Result<bool, GeometryError> {
    if a == b {
        return Err(GeometryError::DegenerateLine(a));
    }
    Ok(orientation(a, b, p) == Orientation::CounterClockwise)
}

/// The four extreme points of a set, named clockwise from the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremes {
    /// Maximum y; ties go to the larger x.
    pub top: Point2,
    /// Maximum x; ties go to the larger y.
    pub right: Point2,
    /// Minimum y; ties go to the smaller x.
    pub bottom: Point2,
    /// Minimum x; ties go to the smaller y.
    pub left: Point2,
}

/// Single linear scan. The tie rule compares full coordinate pairs, so the
/// result does not depend on the order of `points`.
pub fn find_extremes(points: &[Point2]) -> Result<Extremes, GeometryError> {
    let (&first, rest) = points.split_first().ok_or(GeometryError::EmptySet)?;
    let mut e = Extremes {
        top: first,
        right: first,
        bottom: first,
        left: first,
    };
    for &p in rest {
        if (p.y, p.x) > (e.top.y, e.top.x) {
            e.top = p;
        }
        if (p.x, p.y) > (e.right.x, e.right.y) {
            e.right = p;
        }
        if (p.y, p.x) < (e.bottom.y, e.bottom.x) {
            e.bottom = p;
        }
        if (p.x, p.y) < (e.left.x, e.left.y) {
            e.left = p;
        }
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    min: Point2,
    max: Point2,
}

impl BoundingBox {
    pub fn new(min: Point2, max: Point2) -> Result<Self, GeometryError> {
        if min.x <= max.x && min.y <= max.y {
            Ok(Self { min, max })
        } else {
            Err(GeometryError::EmptySet)
        }
    }

    pub fn unit_square() -> Self {
        Self {
            min: Point2::from_finite(0.0, 0.0),
            max: Point2::from_finite(1.0, 1.0),
        }
    }

    pub fn min(&self) -> Point2 {
        self.min
    }

    pub fn max(&self) -> Point2 {
        self.max
    }

    /// Horizontal extent `a`.
    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    /// Vertical extent `b`.
    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }
}

/// Tight axis-aligned bounding box.
pub fn bounding_box(points: &[Point2]) -> Result<BoundingBox, GeometryError> {
    let (&first, rest) = points.split_first().ok_or(GeometryError::EmptySet)?;
    let (mut lo, mut hi) = (first, first);
    for p in rest {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    Ok(BoundingBox { min: lo, max: hi })
}

#[cfg(test)]
pub(crate) fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact_sign(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> Orientation {
        let det =
            (q.0 - p.0) as i128 * (r.1 - p.1) as i128 - (q.1 - p.1) as i128 * (r.0 - p.0) as i128;
        match det.cmp(&0) {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    fn ipt(p: (i64, i64)) -> Point2 {
        pt(p.0 as f64, p.1 as f64)
    }

    #[test]
    fn orientation_basic_turns() {
        assert_eq!(
            orientation(pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)),
            Orientation::CounterClockwise
        );
        assert_eq!(
            orientation(pt(0.0, 0.0), pt(1.0, 1.0), pt(2.0, 2.0)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0)),
            Orientation::Clockwise
        );
    }

    #[test]
    fn orientation_matches_wide_integer_oracle() {
        const LIMIT: i64 = 1 << 26;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let coord = |rng: &mut ChaCha8Rng| rng.random_range(-LIMIT..=LIMIT);
        for i in 0..100_000 {
            let p = (coord(&mut rng), coord(&mut rng));
            let q = (coord(&mut rng), coord(&mut rng));
            // Every other triple is placed on or within one unit of the line
            // p-q so the exact fallback is exercised, not just the filter.
            let r = if i % 2 == 0 {
                (coord(&mut rng), coord(&mut rng))
            } else {
                let dx = (q.0 - p.0) / 4;
                let dy = (q.1 - p.1) / 4;
                let k = rng.random_range(-1..=1);
                let jitter = rng.random_range(-1..=1);
                let x = (p.0 + k * dx).clamp(-LIMIT, LIMIT);
                let y = (p.1 + k * dy + jitter).clamp(-LIMIT, LIMIT);
                (x, y)
            };
            assert_eq!(
                orientation(ipt(p), ipt(q), ipt(r)),
                exact_sign(p, q, r),
                "p={p:?} q={q:?} r={r:?}"
            );
        }
    }

    #[test]
    fn orientation_exact_where_naive_product_rounds() {
        // Exact determinant is 1, but both products exceed 2^53 and the
        // plain floating-point difference rounds to 0.
        let p = (-(1 << 26), -(1 << 26));
        let q = (65113281, 65521954);
        let r = (19256634, 19523573);
        assert_eq!(exact_sign(p, q, r), Orientation::CounterClockwise);
        assert_eq!(
            orientation(ipt(p), ipt(q), ipt(r)),
            Orientation::CounterClockwise
        );
    }

    #[test]
    fn strictly_above_examples() {
        // det = 4*2 - (-4)*1 = 12 > 0
        assert!(is_strictly_above(pt(1.0, 7.0), pt(0.0, 5.0), pt(4.0, 1.0)).unwrap());
        assert!(!is_strictly_above(pt(2.0, 3.0), pt(0.0, 5.0), pt(4.0, 1.0)).unwrap());
        // det = 2*(-3) - (-4)*(-1) = -10 < 0
        assert!(!is_strictly_above(pt(1.0, 2.0), pt(2.0, 5.0), pt(4.0, 1.0)).unwrap());
    }

    #[test]
    fn strictly_above_rejects_degenerate_line() {
        let a = pt(3.0, 3.0);
        assert_eq!(
            is_strictly_above(pt(0.0, 0.0), a, a),
            Err(GeometryError::DegenerateLine(a))
        );
    }

    #[test]
    fn extremes_examples() {
        let s = [
            pt(0.0, 0.0),
            pt(4.0, 1.0),
            pt(2.0, 5.0),
            pt(-1.0, 2.0),
            pt(1.0, 2.0),
        ];
        let e = find_extremes(&s).unwrap();
        assert_eq!(e.top, pt(2.0, 5.0));
        assert_eq!(e.right, pt(4.0, 1.0));
        assert_eq!(e.bottom, pt(0.0, 0.0));
        assert_eq!(e.left, pt(-1.0, 2.0));

        let one = find_extremes(&[pt(1.0, 1.0)]).unwrap();
        assert!([one.top, one.right, one.bottom, one.left]
            .iter()
            .all(|&p| p == pt(1.0, 1.0)));

        let square = [pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 2.0), pt(0.0, 2.0)];
        let e = find_extremes(&square).unwrap();
        assert_eq!(e.top, pt(2.0, 2.0));
        assert_eq!(e.right, pt(2.0, 2.0));
        assert_eq!(e.bottom, pt(0.0, 0.0));
        assert_eq!(e.left, pt(0.0, 0.0));
    }

    #[test]
    fn empty_inputs_are_errors() {
        assert_eq!(find_extremes(&[]), Err(GeometryError::EmptySet));
        assert_eq!(bounding_box(&[]), Err(GeometryError::EmptySet));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Point2::new(f64::NAN, 0.0).is_err());
        assert!(Point2::new(0.0, f64::INFINITY).is_err());
        assert!(Point2::try_from((f64::NEG_INFINITY, 1.0)).is_err());
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(pt(-0.0, 0.0), pt(0.0, -0.0));
        assert_eq!(pt(-0.0, 1.0).x().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn bounding_box_examples() {
        let b = bounding_box(&[pt(0.0, 0.0), pt(4.0, 1.0), pt(2.0, 5.0)]).unwrap();
        assert_eq!((b.min(), b.max()), (pt(0.0, 0.0), pt(4.0, 5.0)));

        let b = bounding_box(&[pt(1.0, 1.0)]).unwrap();
        assert_eq!((b.min(), b.max()), (pt(1.0, 1.0), pt(1.0, 1.0)));
        assert_eq!((b.width(), b.height()), (0.0, 0.0));

        let b = bounding_box(&[pt(-1.0, -1.0), pt(1.0, 1.0)]).unwrap();
        assert_eq!((b.width(), b.height()), (2.0, 2.0));
    }

    fn arb_point() -> impl Strategy<Value = Point2> {
        (-1e6f64..1e6, -1e6f64..1e6).prop_map(|(x, y)| pt(x, y))
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric(p in arb_point(), q in arb_point(), r in arb_point()) {
            let o = orientation(p, q, r);
            let swapped = orientation(p, r, q);
            prop_assert_eq!(o == Orientation::CounterClockwise, swapped == Orientation::Clockwise);
            prop_assert_eq!(o == Orientation::Collinear, swapped == Orientation::Collinear);
        }

        #[test]
        fn orientation_cyclic(
            p in (-1000i32..1000, -1000i32..1000),
            q in (-1000i32..1000, -1000i32..1000),
            r in (-1000i32..1000, -1000i32..1000),
        ) {
            let f = |(x, y): (i32, i32)| pt(x as f64, y as f64);
            prop_assert_eq!(orientation(f(p), f(q), f(r)), orientation(f(q), f(r), f(p)));
        }

        #[test]
        fn extremes_permutation_invariant(
            mut pts in prop::collection::vec((0i32..6, 0i32..6), 1..40),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            let to_points = |v: &[(i32, i32)]| -> Vec<Point2> {
                v.iter().map(|&(x, y)| pt(x as f64, y as f64)).collect()
            };
            let before = find_extremes(&to_points(&pts)).unwrap();
            pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let after = find_extremes(&to_points(&pts)).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn extremes_dominate_and_belong(pts in prop::collection::vec(arb_point(), 1..60)) {
            let e = find_extremes(&pts).unwrap();
            for p in &pts {
                prop_assert!(e.top.y() >= p.y());
                prop_assert!(e.right.x() >= p.x());
                prop_assert!(e.bottom.y() <= p.y());
                prop_assert!(e.left.x() <= p.x());
            }
            for x in [e.top, e.right, e.bottom, e.left] {
                prop_assert!(pts.contains(&x));
            }
            let b = bounding_box(&pts).unwrap();
            prop_assert!(pts.iter().all(|&p| b.contains(p)));
            prop_assert_eq!(b.max().y(), e.top.y());
            prop_assert_eq!(b.min().x(), e.left.x());
        }
    }
}
