//! Exact-arithmetic toolkit for Kantor–Koecher–Tits constructions.
//!
//! Everything is generic over an exact field implementing [`Scalar`]; the
//! aliases below fix it to arbitrary-precision rationals.

pub mod chevalley;
pub mod compalg;
pub mod error;
pub mod exactnum;
pub mod jordan;
pub mod kantorvf;
pub mod kkt;
pub mod liealg;
pub mod sampling;
pub mod scalar;
pub mod triplesys;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type RatMatrix = exactnum::Matrix<Rational>;
pub type RatVec = exactnum::SparseVec<Rational>;
pub type RatJordan = jordan::JordanAlgebra<Rational>;
pub type RatLieAlgebra = liealg::StructureLieAlgebra<Rational>;
