//! Exact computations on cyclic branched coverings of 2-bridge knots and
//! links: covering classification, coloured-graph and polyhedral models,
//! fundamental group presentations and first homology by several
//! independent routes.
//!
//! The arithmetic core (matrices, Smith normal form, Laurent polynomials,
//! continued fractions) is generic over the integer type; the aliases below
//! fix the concrete types used by the topology modules.

pub mod bigjson;
pub mod cli;
pub mod covering;
pub mod decomposition;
pub mod error;
pub mod gems;
pub mod homology;
pub mod laurent;
pub mod matrix;
pub mod polyhedral;
pub mod presentations;
pub mod scalar;
pub mod two_bridge;
pub mod words;

pub use covering::{classify, CoveringClass, CoveringSpec, GeometryType};
pub use error::{Error, Result};
pub use homology::{h1, verify_consistency, AbelianGroup, IntMatrix, Order, Route};
pub use scalar::Scalar;
pub use two_bridge::{normalize, TwoBridge};
pub use words::{CyclicPresentation, FreeWord, Presentation};

/// Exact rationals for continued fractions and slopes.
pub type Rational = num_rational::Ratio<i64>;
/// Laurent polynomials with arbitrary-precision coefficients.
pub type Polynomial = laurent::LaurentPolynomial<num_bigint::BigInt>;
/// Smith normal form over arbitrary-precision integers.
pub type IntSmithForm = matrix::SmithForm<num_bigint::BigInt>;
