//! Hilbert series, Hilbert polynomials and local multiplicities.

mod local;
mod polynomial;
mod series;

pub use local::{local_length, local_multiplicity, local_multiplicity_detail, HsConfig, LocalDetail};
pub use polynomial::{graded_degree, mixed_multiplicity, HilbertPolynomial, VALIDATION_BAND};
pub use series::HilbertSeries;
