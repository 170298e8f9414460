//! Exact counting of nonattacking rider placements, interpolation of the
//! bishops counting quasipolynomial, and the signed-graph and lattice-vertex
//! machinery that independently bounds its period.

pub mod board;
pub mod cli;
pub mod counting;
pub mod error;
pub mod exec;
pub mod geometry;

pub use error::{Error, Result};
pub mod linalg;
pub mod quasipoly;
pub mod rational;
pub mod sampling;
pub mod signed_graph;
