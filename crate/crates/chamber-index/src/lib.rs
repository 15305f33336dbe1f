//! Certified geometric-index computation for links in a solid torus.
//!
//! A link is encoded combinatorially as a cyclic sequence of chambers cut
//! by meridional discs, each chamber holding catalog pieces (spanning
//! arcs, turn-backs, named clasps, circles) with explicit disc slots. On
//! top of that encoding the crate computes algebraic indices from traced
//! windings, certifies the geometric index chamber by chamber when the
//! catalog licenses it, multiplies indices under satellite nesting, and
//! reads and writes the `.cld` text format.

pub mod catalog;
pub mod compose;
pub mod dsl;
pub mod engine;
pub mod link;

pub use catalog::{ChamberContent, ClaspKind, Piece, Side};
pub use engine::{geometric_index, GeometricIndex, IndexReport};
pub use link::{ChamberLink, ComponentTrace, DiscCrossing};
