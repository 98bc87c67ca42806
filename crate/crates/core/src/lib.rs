//! Exact verification engine for local epsilon constant computations over
//! weakly ramified abelian extensions.

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod fundmatrix;
pub mod gauss;
pub mod groupring;
pub mod kgroup;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod residue;
pub mod scalar;

pub use cyclo::CycloElem;
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use poly::Poly;
pub use scalar::Field;

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type QMatrix = Matrix<Rational>;
pub type CycloMatrix = Matrix<CycloElem>;
pub type QPoly = Poly<Rational>;
