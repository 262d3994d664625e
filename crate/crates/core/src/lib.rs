//! Recursive extreme-point elimination for planar convex hulls.
//!
//! For points drawn uniformly from a rectangle, [`preprocess`] discards all
//! but a logarithmic number of them in linear expected time while keeping
//! every vertex of the convex hull. The survivors can then be handed to any
//! hull algorithm.
//!
//! ```
//! use hullsieve::{convex_hull, generate, preprocess, GenSpec};
//!
//! let points = generate(&GenSpec::unit(10_000, 42));
//! let result = preprocess(&points);
//! assert!(result.retained().len() < 200);
//! assert_eq!(convex_hull(&points)?, convex_hull(result.retained())?);
//! # Ok::<(), hullsieve::GeometryError>(())
//! ```
//!
//! The guide in `book/` walks through the filter, the hull oracle and the
//! Monte Carlo experiments; its code listings are compiled and run as
//! doctests of this crate.

pub mod filter;
pub mod geometry;
pub mod hull;
pub mod io;
pub mod random;
pub mod stats;

pub use filter::{
    point_selection, preprocess, preprocess_parallel, split_regions, Corner, FilterResult,
    LevelRecord,
};
pub use geometry::{
    bounding_box, find_extremes, is_strictly_above, orientation, BoundingBox, Extremes,
    GeometryError, Orientation, Point2,
};
pub use hull::{contains_point, convex_hull, hulls_equal, HullPolygon};
pub use io::{parse_points, read_points, write_points, PointIoError};
pub use random::{generate, trial_seed, GenSpec};
pub use stats::TrialReport;

// `cargo test --doc` runs every Rust listing in the guide.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/filter.md")]
    mod filter {}
    #[doc = include_str!("../../../book/src/hulls.md")]
    mod hulls {}
    #[doc = include_str!("../../../book/src/lemmas.md")]
    mod lemmas {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
