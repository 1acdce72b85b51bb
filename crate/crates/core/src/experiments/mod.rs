//! Identity checks, convergence tables and moment-growth reports.

pub mod carleman;
pub mod convergence;
pub mod identities;
pub mod output;

pub use carleman::{carleman_report, CarlemanReport};
pub use convergence::{
    ls_slope, near_diagonal, segment_grid, stieltjes_convergence, ConvergenceRow, ConvergenceSetup, ConvergenceTable,
};
pub use identities::{
    default_points, filter_points, identity_product, identity_quotient, identity_ratio, identity_reversal,
    identity_suite, IdentityResult, IdentitySuite, Point, PointResidual,
};
pub use output::{convergence_csv, convergence_gnuplot, to_json, write_convergence};
