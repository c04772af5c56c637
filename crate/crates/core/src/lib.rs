//! Exact computations in the rank-2 descendent algebra: Chern filtration,
//! graded integrals, Mumford relations, sl2 operators and the refined
//! Poincaré series of the moduli of stable bundles on a curve.

pub mod algebra;
pub mod error;
pub mod genfun;
pub mod integral;
pub mod linalg;
pub mod omega;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod series;
pub mod sl2;
pub mod verify;

pub use error::{Error, Result};
