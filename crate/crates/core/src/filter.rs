//! Recursive extreme-point elimination.
//!
//! The filter stores the four extreme points of the input, then walks each
//! of the four corners cut off by the chords `top-right`, `right-bottom`,
//! `bottom-left` and `left-top`. Inside a corner it repeatedly keeps the two
//! extremes that span that corner's chord and continues with the points
//! strictly outside the new chord, until at most two points remain. Points
//! on or inside a chord can never be strict hull vertices and are dropped.
//!
//! Every corner walk operates on one subset per level, so it is a loop
//! rather than a recursion and stack depth is constant even on inputs (for
//! example points on a circle) where nothing is eliminated.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::geometry::{find_extremes, orientation, Extremes, Orientation, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Corner {
    #[serde(rename = "TR")]
    TopRight,
    #[serde(rename = "BR")]
    BottomRight,
    #[serde(rename = "BL")]
    BottomLeft,
    #[serde(rename = "TL")]
    TopLeft,
}

impl Corner {
    /// Clockwise from the top right; the order in which corners are walked.
    pub const ALL: [Corner; 4] = [
        Corner::TopRight,
        Corner::BottomRight,
        Corner::BottomLeft,
        Corner::TopLeft,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Corner::TopRight => "TR",
            Corner::BottomRight => "BR",
            Corner::BottomLeft => "BL",
            Corner::TopLeft => "TL",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Chord endpoints, directed clockwise so the outward side is on the left.
    pub fn chord(self, e: &Extremes) -> (Point2, Point2) {
        match self {
            Corner::TopRight => (e.top, e.right),
            Corner::BottomRight => (e.right, e.bottom),
            Corner::BottomLeft => (e.bottom, e.left),
            Corner::TopLeft => (e.left, e.top),
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One step of a corner walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    /// 1 for the first subset handed to the corner walk.
    pub level: usize,
    pub input_size: usize,
    /// Points passed on to the next level; 0 when the walk stops here.
    pub survivors: usize,
}

/// Retained set plus per-corner walk statistics.
///
/// `retained` is a set in first-insertion order: duplicate input points
/// collapse to a single entry.
#[derive(Debug, Clone, Default)]
pub struct FilterResult {
    retained: Vec<Point2>,
    seen: HashSet<Point2>,
    corner_stats: [Vec<LevelRecord>; 4],
}

impl FilterResult {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn retained(&self) -> &[Point2] {
        &self.retained
    }

    pub fn into_retained(self) -> Vec<Point2> {
        self.retained
    }

    pub fn corner_stats(&self, corner: Corner) -> &[LevelRecord] {
        &self.corner_stats[corner.index()]
    }

    /// Number of levels the walk of `corner` went through.
    pub fn depth(&self, corner: Corner) -> usize {
        self.corner_stats(corner).len()
    }

    /// Total number of corner-walk levels across all four corners.
    pub fn total_recursions(&self) -> usize {
        self.corner_stats.iter().map(Vec::len).sum()
    }

    fn insert(&mut self, p: Point2) {
        if self.seen.insert(p) {
            self.retained.push(p);
        }
    }

    fn record(&mut self, corner: Corner, record: LevelRecord) {
        self.corner_stats[corner.index()].push(record);
    }

    /// Appends `other` after `self`, as if its insertions had happened here.
    fn absorb(&mut self, other: FilterResult, corner: Corner) {
        for p in other.retained {
            self.insert(p);
        }
        self.corner_stats[corner.index()].extend(other.corner_stats[corner.index()].iter());
    }
}

#[inline]
fn outside(p: Point2, a: Point2, b: Point2) -> bool {
    orientation(a, b, p) == Orientation::CounterClockwise
}

/// Splits `points` into the four corner subsets of `extremes`.
///
/// Subsets are returned in [`Corner::ALL`] order. A point strictly outside
/// several chords (possible only for degenerate extremes) lands in each of
/// the matching subsets; points outside none are eliminated. A chord whose
/// endpoints coincide has an empty subset, since no point can be strictly
/// beyond a single extreme point in that corner.
pub fn split_regions(points: &[Point2], extremes: &Extremes) -> [Vec<Point2>; 4] {
    let chords = Corner::ALL.map(|c| c.chord(extremes));
    let live = chords.map(|(a, b)| a != b);
    let mut regions: [Vec<Point2>; 4] = Default::default();
    for &p in points {
        for i in 0..4 {
            let (a, b) = chords[i];
            if live[i] && outside(p, a, b) {
                regions[i].push(p);
            }
        }
    }
    regions
}

/// Walks one corner starting from `subset`, adding retained points and one
/// [`LevelRecord`] per level to `acc`.
///
/// A level with at most two points keeps them all and stops. Otherwise the
/// two extremes spanning the corner's chord are kept and the walk continues
/// with the points strictly outside that chord. If those two extremes
/// coincide the chord is undefined; the whole subset is kept and the walk
/// stops.
pub fn point_selection(subset: Vec<Point2>, corner: Corner, acc: &mut FilterResult) {
    let mut current = subset;
    let mut level = 1;
    loop {
        let input_size = current.len();
        let stop = |acc: &mut FilterResult, current: Vec<Point2>| {
            for p in current {
                acc.insert(p);
            }
            acc.record(
                corner,
                LevelRecord {
                    level,
                    input_size,
                    survivors: 0,
                },
            );
        };

        if input_size <= 2 {
            stop(acc, current);
            return;
        }
        let extremes = find_extremes(&current).expect("subset has more than two points");
        let (a, b) = corner.chord(&extremes);
        if a == b {
            stop(acc, current);
            return;
        }
        acc.insert(a);
        acc.insert(b);
        current.retain(|&p| outside(p, a, b));
        acc.record(
            corner,
            LevelRecord {
                level,
                input_size,
                survivors: current.len(),
            },
        );
        level += 1;
    }
}

enum Seeded {
    Small(FilterResult),
    Extremes(FilterResult, Extremes),
}

fn seed_extremes(points: &[Point2]) -> Seeded {
    let mut acc = FilterResult::new();
    if points.len() <= 3 {
        for &p in points {
            acc.insert(p);
        }
        return Seeded::Small(acc);
    }
    let extremes = find_extremes(points).expect("more than three points");
    for p in [extremes.top, extremes.right, extremes.bottom, extremes.left] {
        acc.insert(p);
    }
    Seeded::Extremes(acc, extremes)
}

/// Runs the elimination filter on `points`.
///
/// Sets with at most three points are returned unchanged (minus duplicates)
/// and without walk records; this includes the empty set. The retained set
/// contains every strict vertex of the convex hull of `points`.
pub fn preprocess(points: &[Point2]) -> FilterResult {
    let (mut acc, extremes) = match seed_extremes(points) {
        Seeded::Extremes(acc, extremes) => (acc, extremes),
        Seeded::Small(acc) => return acc,
    };
    let regions = split_regions(points, &extremes);
    for (corner, subset) in Corner::ALL.into_iter().zip(regions) {
        point_selection(subset, corner, &mut acc);
    }
    acc
}

/// Same result as [`preprocess`], with the four corner walks run on the
/// rayon thread pool.
pub fn preprocess_parallel(points: &[Point2]) -> FilterResult {
    let (mut acc, extremes) = match seed_extremes(points) {
        Seeded::Extremes(acc, extremes) => (acc, extremes),
        Seeded::Small(acc) => return acc,
    };
    let [tr, br, bl, tl] = split_regions(points, &extremes);
    let walk = |subset: Vec<Point2>, corner: Corner| {
        let mut local = FilterResult::new();
        point_selection(subset, corner, &mut local);
        local
    };
    let ((r_tr, r_br), (r_bl, r_tl)) = rayon::join(
        || {
            rayon::join(
                || walk(tr, Corner::TopRight),
                || walk(br, Corner::BottomRight),
            )
        },
        || {
            rayon::join(
                || walk(bl, Corner::BottomLeft),
                || walk(tl, Corner::TopLeft),
            )
        },
    );
    for (corner, part) in Corner::ALL.into_iter().zip([r_tr, r_br, r_bl, r_tl]) {
        acc.absorb(part, corner);
    }
    acc
}
