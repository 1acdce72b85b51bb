//! Mixed Hermite-Padé approximation for a compatible pair of Nikishin systems.

pub mod biorth;
pub mod index;
pub mod normality;
pub mod oracle;
pub mod pair;
pub mod scan;
pub mod solve;

pub use index::{classify_multiindex, combined_indices, compositions, diagonal, multi_indices, step_line, Classification, CombinedIndex, MultiIndex};
pub use pair::{root_system, CompatiblePair};
pub use solve::{
    moment_matrix, orthogonality_residuals, orthogonality_scale, solve_mixed, solve_type1, solve_type1_in, solve_type2, solve_type2_in,
    TypeISolution, TypeIISolution, VectorPolynomialSolution,
};
pub use biorth::{biorthogonal_sequences, check_complete, Biorthogonal};
pub use normality::{normality_check, Normality, NormalityReport};
pub use oracle::{series_kernel, series_matrix};
pub use scan::{perfectness_scan, residual_status, IndexReport, InterlacingEntry, ResidualStatus, ScanReport, ScanSummary};
