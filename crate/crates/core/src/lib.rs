//! Shortest perimeter and area pieces cut from a triangle (or a convex
//! polygon) by lines through an interior point.
//!
//! Closed forms for the centroid of a triangle live in [`closed_form`] and
//! rest on the W-line solution in [`wline`]; [`oracle`] recomputes every
//! value by brute-force angular sweeps so the two routes can be compared.
//! [`shape_scan`] scans triangle shape space and [`convex_poly`] explores
//! convex polygons.

pub mod boundary;
pub mod cli;
pub mod closed_form;
pub mod convex_poly;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod output;
pub mod search;
pub mod shape_scan;
pub mod triangle_core;
pub mod verify;
pub mod wline;

pub use boundary::{Chord, ConvexBoundary};
pub use error::{Error, Result};
pub use geometry::Point;
