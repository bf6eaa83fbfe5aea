//! Exact computation with polynomial knots.
//!
//! A polynomial knot is an embedding of the real line into 3-space whose
//! components are univariate real polynomials. This crate verifies such
//! embeddings exactly, extracts oriented knot diagrams and their invariants
//! (Kauffman bracket, Jones polynomial, determinant), constructs height
//! polynomials realizing prescribed crossing data, tests the degree-6
//! rank obstruction for five-crossing projections, and classifies knots by
//! the sign-octant path-component invariant.

pub mod construct;
pub mod corpus;
pub mod diagram;
pub mod embedding;
pub mod error;
pub mod homotopy;
pub mod invariants;
pub mod laurent;
pub mod poly;
pub mod resultant;
pub mod roots;

pub use error::{Error, Result};
pub use poly::{Degree, Polynomial, Rat};
