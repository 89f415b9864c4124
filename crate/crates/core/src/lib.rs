//! Exact checks of the computations behind the tricanonical system and the
//! quotient-curve genus argument on a σ-invariant quintic in P³ with four
//! simple elliptic singularities.

pub mod algebra;
pub mod baselocus;
pub mod divisor;
pub mod error;
pub mod genus;
pub mod geometry;
pub mod report;
pub mod suites;
pub mod tangent;

pub use error::{Error, Result};
