pub mod coalgebra;
pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod homotopy;
pub mod jacobi;
pub mod linalg;
pub mod multilinear;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};
pub use scalar::Scalar;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rationals, the default scalar.
pub type Rat = BigRational;
pub type QInt = BigInt;
pub type QVector = graded::Vector<Rat>;
pub type QMap = multilinear::MultiMap<Rat>;
pub type QCochain = multilinear::Cochain<Rat>;
pub type QSequence = multilinear::MapSequence<Rat>;
pub type QCoderivation = coalgebra::Coderivation<Rat>;
pub type QCohomomorphism = coalgebra::Cohomomorphism<Rat>;
