//! Scalar backends, polynomials, rational functions, Sturm chains and dense linear algebra.

pub mod bigfloat;
pub mod complex;
pub mod descartes;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod sturm;

pub use bigfloat::BigFloat;
pub use complex::ComplexPair;
pub use matrix::{nullspace, Matrix};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use scalar::{format_rational, parse_rational, Rational, Scalar};
pub use sturm::{isolate_roots, sturm_count, Ends, ExtReal, RootInterval, SquareFree, SturmChain};
