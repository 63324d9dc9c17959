//! Exact list-coloring toolkit for small planar graphs.
//!
//! Builds the 63-vertex planar 3-colorable graph that is not 4-choosable
//! together with its blocking list assignment, decides list colorability
//! exactly, and checks the structural facts around it (planarity through an
//! explicit embedding, chromatic number, Hamiltonicity, perfect matchings)
//! with certificates that are replayed by independent checkers.

pub mod choose;
pub mod cli;
pub mod construct;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod lists;
pub mod proof;
pub mod solve;
pub mod verify;

/// Exact coordinates used by built-in layouts.
pub type Rational = num_rational::Ratio<i64>;
/// Exact layout point.
pub type Point = geometry::Point<Rational>;
/// Floating point layout point, for drawings imported from elsewhere.
pub type PointF64 = geometry::Point<f64>;

pub use graph::{make_graph, Graph, VertexId};
pub use lists::{Color, ListAssignment};
