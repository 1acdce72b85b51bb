//! Atomic measures, generator chains and the transforms built from them.

pub mod atomic;
pub mod config;
pub mod desk;
pub mod discretize;
pub mod interval;
pub mod inverse;
pub mod system;

pub use atomic::AtomicMeasure;
pub use config::{LoadedSystem, SystemDef, SystemFile};
pub use discretize::{discretize_weight, Preset};
pub use interval::ExtendedInterval;
pub use inverse::{inverse_as_rational, inverse_decomposition, InverseDecomposition, InverseRational, MomentSequence};
pub use system::{validate_chain, GeneratorChain, NikishinSystem, ValidationRecord};
