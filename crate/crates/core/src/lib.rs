//! Nikishin systems of measures and their Hermite-Padé approximants, in exact arithmetic.

pub mod error;
pub mod exactnum;
pub mod experiments;
pub mod hermitepade;
pub mod measures;
pub mod rootloc;

pub use error::{Error, Result};
