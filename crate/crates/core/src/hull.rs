//! Reference convex hull (Andrew's monotone chain) and canonical polygons.
//!
//! Two hulls are considered the same when their strict vertices agree.
//! Points lying on a hull edge between two vertices are not vertices, and
//! duplicate input points are collapsed. This matters for verification: the
//! elimination filter drops points that sit exactly on a chord, which may
//! include collinear boundary points of the input.

use crate::geometry::{orientation, GeometryError, Orientation, Point2};

/// Convex polygon in canonical form.
///
/// Vertices run counter-clockwise from the lexicographically smallest one
/// (minimum x, then minimum y), every consecutive triple is a strict left
/// turn, and all vertices are distinct. One- and two-vertex hulls describe
/// single points and segments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HullPolygon {
    vertices: Vec<Point2>,
}

impl HullPolygon {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area; zero for point and segment hulls.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let twice: f64 = (0..n)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % n];
                p.x() * q.y() - q.x() * p.y()
            })
            .sum();
        twice * 0.5
    }

    /// Membership test; the boundary counts as inside.
    pub fn contains(&self, p: Point2) -> bool {
        contains_point(self, p)
    }
}

pub fn convex_hull(points: &[Point2]) -> Result<HullPolygon, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() <= 2 {
        return Ok(HullPolygon { vertices: sorted });
    }

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * sorted.len());
    let chain = |hull: &mut Vec<Point2>, floor: usize, p: Point2| {
        while hull.len() >= floor + 2
            && orientation(hull[hull.len() - 2], hull[hull.len() - 1], p)
                != Orientation::CounterClockwise
        {
            hull.pop();
        }
        hull.push(p);
    };
    for &p in &sorted {
        chain(&mut hull, 0, p);
    }
    // The upper chain may not pop below the last lower vertex.
    let lower_len = hull.len() - 1;
    for &p in sorted.iter().rev().skip(1) {
        chain(&mut hull, lower_len, p);
    }
    // The last vertex pushed is the starting point again.
    hull.pop();
    Ok(HullPolygon { vertices: hull })
}

/// Vertex-by-vertex comparison of canonical hulls.
pub fn hulls_equal(a: &HullPolygon, b: &HullPolygon) -> bool {
    a.vertices == b.vertices
}

pub fn contains_point(hull: &HullPolygon, p: Point2) -> bool {
    match hull.vertices.as_slice() {
        [] => false,
        [v] => *v == p,
        [a, b] => {
            orientation(*a, *b, p) == Orientation::Collinear
                && a.x().min(b.x()) <= p.x()
                && p.x() <= a.x().max(b.x())
                && a.y().min(b.y()) <= p.y()
                && p.y() <= a.y().max(b.y())
        }
        vs => {
            let n = vs.len();
            (0..n).all(|i| orientation(vs[i], vs[(i + 1) % n], p) != Orientation::Clockwise)
        }
    }
}
