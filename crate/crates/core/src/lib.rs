//! Solving quintics by iterating an S5-equivariant degree-6 map on CP³.

pub mod basins;
pub mod checks;
pub mod conformance;
pub mod dd;
pub mod dual;
pub mod equivariants;
pub mod error;
pub mod geometry;
pub mod group;
pub mod invariants;
pub mod maps1d;
pub mod param;
pub mod solver;
pub mod poly;
pub mod special;
mod tables;

pub use error::{Error, Result};
pub use geometry::{ChartValue, Mat4, PointU, PointX, Vec4, Vec5, C};
