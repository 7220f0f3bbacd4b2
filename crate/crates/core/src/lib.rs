//! Residual points of classical root systems: distinguished orbits, residual
//! segments, the Langlands order, Weyl orbits, intertwining paths and
//! projected root systems.

pub mod dynkin;
pub mod error;
pub mod intertwine;
pub mod langlands;
pub mod orbits;
pub mod projections;
pub mod rootsys;
pub mod segments;
pub mod sweeps;

pub use error::{Error, Result};
pub use rootsys::{HalfInt, Kind, RootSystemSpec, Weight};
