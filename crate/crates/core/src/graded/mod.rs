//! Degrees, Koszul and permutation signs, unshuffle enumeration, and
//! finite-dimensional graded spaces.

mod degree;
mod lincomb;
mod partitions;
mod sign;
mod space;
mod vector;

pub use degree::{sum_degrees, Degree};
pub use lincomb::LinComb;
pub use partitions::{enumerate_partitions, PartitionSchema, Unshuffle};
pub use sign::{inversion_count, koszul_exponent, koszul_sign, permutation_sign, Sign};
pub use space::{same_space, BasisElement, GradedSpace, SpaceRef, TupleIter};
pub(crate) use space::ensure_same;
pub use vector::{Coeffs, Vector};
