//! Exact virtual structure constants for complete intersections in weighted
//! projective spaces, and the genus-0 and genus-1 Gromov-Witten invariants and
//! curve counts built from them.
//!
//! Everything is computed with arbitrary-precision rationals; there is no
//! floating point anywhere in the pipeline.

pub mod counts;
pub mod error;
pub mod fixtures;
pub mod genus0;
pub mod genus1;
pub mod geometry;
pub mod graphs;
pub mod integrand;
pub mod kernel;
pub mod par;
pub mod session;
pub mod store;

pub use error::{Error, Result};
pub use geometry::{InsertionIndex, SpaceSpec};
pub use kernel::{Integer, Rational};
pub use session::Session;
