//! Extended root polytopes of directed graphs: h*-polynomials through
//! dissecting spanning-tree sets, their behavior under deletion and
//! contraction, and an exact lattice-point oracle to check them against.

mod dsu;

pub mod cli;
pub mod corpus;
pub mod digraph;
pub mod error;
pub mod geometry;
pub mod hstar;
pub mod poly;
pub mod signatures;
pub mod trees;
pub mod verify;

pub use digraph::{Digraph, DigraphJson, Edge, EdgeId};
pub use error::{Error, Result};
pub use poly::{HStarPolynomial, Polynomial};
