//! Exact integer and rational algebra: determinants, dense polynomials,
//! Chebyshev polynomials, polynomial-matrix determinants and resultants.

mod interp;
mod matrix;
mod poly;
mod resultant;

pub use interp::{interpolation_nodes, poly_matrix_det, poly_matrix_det_at};
pub use matrix::{det_exact, IntegerMatrix};
pub use poly::{chebyshev_t, IntegerPolynomial};
pub use resultant::{resultant, sylvester_matrix};

/// Exact rationals, reduced with a positive denominator.
pub type RationalNumber = num_rational::BigRational;
