//! Exact zero counting for linear forms in a Nikishin system.

pub mod at;
pub mod form;
pub mod zeros;

pub use at::{at_system_zero_bound, left_of_delta1, random_coefficients, AtReport};
pub use form::LinearForm;
pub use zeros::{count_roots, count_zeros_off_delta1, interlacing_check, isolate_in, zeros_in_hull, InterlacingReport, ZeroReport};
