//! Timelike spherical Hilbert geometry of the antipodal pair of 2-simplices on S².

pub mod bodies;
pub mod cli;
pub mod error;
pub mod finsler;
pub mod golden;
pub mod metrics;
pub mod order;
pub mod render;
pub mod sampling;
pub mod sphere;
pub mod symmetry;
pub mod verify;

pub use error::{GeometryError, Result};
