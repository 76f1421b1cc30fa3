//! Exact factorization of totally nonnegative periodic block-Toeplitz
//! matrices into cylindrical networks, together with the combinatorial
//! machinery used to verify it: cylindrical path families, Temperley-Lieb
//! immanants, and polynomial interlacing tests.
//!
//! The containers are generic over a [`Scalar`] type; the aliases at the
//! crate root fix the scalar to exact rationals, which is what every
//! algorithm in this crate is meant to run on.

pub mod error;
pub mod factor;
pub mod interlace;
pub mod io;
pub mod laurent;
pub mod loop_matrix;
pub mod matrix;
pub mod network;
pub mod poly;
pub mod random;
pub mod roots;
pub mod scalar;
pub mod tl;
pub mod tncheck;

pub use error::CoreError;
pub use scalar::Scalar;

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;
/// Laurent polynomial with rational coefficients.
pub type LaurentPoly = laurent::Laurent<Rational>;
/// Polynomial with rational coefficients.
pub type RatPoly = poly::Poly<Rational>;
/// Finite rational matrix.
pub type DenseMatrix = matrix::Matrix<Rational>;
/// Folded (n,m)-periodic matrix with rational Laurent entries.
pub type LoopMatrix = loop_matrix::PeriodicMatrix<Rational>;
/// Cylindrical network with rational edge weights.
pub type CylNetwork = network::Network<Rational>;
