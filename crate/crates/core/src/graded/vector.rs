use std::fmt;

use crate::error::{input, Result};
use crate::graded::{ensure_same, Degree, LinComb, SpaceRef};
use crate::scalar::Scalar;

/// Coefficients of a vector in basis-index form.
pub type Coeffs<S> = LinComb<usize, S>;

/// An element of a graded space, stored sparsely on basis indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S: Scalar> {
    space: SpaceRef,
    coeffs: Coeffs<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn zero(space: SpaceRef) -> Self {
        Vector { space, coeffs: LinComb::new() }
    }

    pub fn basis(space: SpaceRef, i: usize) -> Self {
        Vector { space, coeffs: LinComb::single(i, S::one()) }
    }

    pub fn from_coeffs(space: SpaceRef, coeffs: Coeffs<S>) -> Self {
        debug_assert!(coeffs.keys().all(|&i| i < space.dim()));
        Vector { space, coeffs }
    }

    pub fn from_named(space: SpaceRef, terms: &[(&str, S)]) -> Result<Self> {
        let mut coeffs = LinComb::new();
        for (name, c) in terms {
            coeffs.add_term(space.index_of(name)?, c.clone());
        }
        Ok(Vector { space, coeffs })
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn coeffs(&self) -> &Coeffs<S> {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Coeffs<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous vectors.
    pub fn degree(&self) -> Option<Degree> {
        let mut it = self.coeffs.keys().map(|&i| self.space.degree(i));
        let first = it.next()?.clone();
        it.all(|d| *d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &Vector<S>) -> Result<Vector<S>> {
        ensure_same(&self.space, &other.space, "vector addition")?;
        let mut c = self.coeffs.clone();
        c.add_assign(&other.coeffs);
        Ok(Vector { space: self.space.clone(), coeffs: c })
    }

    pub fn sub(&self, other: &Vector<S>) -> Result<Vector<S>> {
        ensure_same(&self.space, &other.space, "vector subtraction")?;
        Ok(Vector { space: self.space.clone(), coeffs: self.coeffs.sub(&other.coeffs) })
    }

    pub fn scale(&self, c: &S) -> Vector<S> {
        Vector { space: self.space.clone(), coeffs: self.coeffs.scaled(c) }
    }

    pub fn require_homogeneous(&self) -> Result<Degree> {
        match self.degree() {
            Some(d) => Ok(d),
            None if self.is_zero() => input("zero vector has no degree"),
            None => input("vector is not homogeneous"),
        }
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}", self.space.name(*i))?;
        }
        Ok(())
    }
}
