use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A degree in the lattice `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(Vec<i64>);

impl Degree {
    pub fn new(components: Vec<i64>) -> Self {
        assert!(!components.is_empty(), "grading rank must be positive");
        Degree(components)
    }

    pub fn zero(n: usize) -> Self {
        Degree::new(vec![0; n])
    }

    /// The first unit vector `(1, 0, ..., 0)`.
    pub fn e1(n: usize) -> Self {
        let mut c = vec![0; n];
        c[0] = 1;
        Degree::new(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    /// The symmetric pairing `<u, v> = sum u_i v_i`.
    pub fn pair(&self, other: &Degree) -> i64 {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// First component, i.e. `<e1, self>`.
    pub fn first(&self) -> i64 {
        self.0[0]
    }

    pub fn parity(&self) -> i64 {
        self.pair(self).rem_euclid(2)
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add<&Degree> for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), rhs.rank());
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        &self + &rhs
    }
}

impl AddAssign<&Degree> for Degree {
    fn add_assign(&mut self, rhs: &Degree) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub<&Degree> for &Degree {
    type Output = Degree;
    fn sub(self, rhs: &Degree) -> Degree {
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, rhs: Degree) -> Degree {
        &self - &rhs
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        -&self
    }
}

impl Mul<&Degree> for i64 {
    type Output = Degree;
    fn mul(self, rhs: &Degree) -> Degree {
        Degree(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Sum of a list of degrees; `n` fixes the rank when the list is empty.
pub fn sum_degrees<'a>(n: usize, degrees: impl IntoIterator<Item = &'a Degree>) -> Degree {
    let mut acc = Degree::zero(n);
    for d in degrees {
        acc += d;
    }
    acc
}
