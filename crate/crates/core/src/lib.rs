//! Glauber and flip dynamics for proper colorings, together with the
//! path-coupling machinery used to analyse them.

pub mod bounds;
pub mod config;
pub mod coupling;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod kempe;
pub mod lp;
pub mod markov;
pub mod metric;
pub mod params;
pub mod rational;

pub use error::{Error, Result};
