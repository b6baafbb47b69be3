use std::ops::Mul;

use crate::error::{input, Result};
use crate::graded::Degree;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k`.
    pub fn from_exponent(k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn to_scalar<S: Scalar>(self) -> S {
        S::sign_power(self.exponent())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_exponent(self.exponent() + rhs.exponent())
    }
}

fn check_arrangement(len: usize, arrangement: &[usize]) -> Result<()> {
    if arrangement.len() != len {
        return input(format!(
            "arrangement has {} slots but {} degrees were given",
            arrangement.len(),
            len
        ));
    }
    let mut seen = vec![false; len];
    for &i in arrangement {
        if i >= len || seen[i] {
            return input(format!("{arrangement:?} is not a permutation of 0..{len}"));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Parity exponent of the Koszul sign for moving items listed in `arrangement`
/// (indices into `degrees`) back into increasing index order.
///
/// Every inverted pair `(u, v)` contributes `<u, v>`.
pub fn koszul_exponent(degrees: &[Degree], arrangement: &[usize]) -> i64 {
    let mut e = 0;
    for i in 0..arrangement.len() {
        for j in i + 1..arrangement.len() {
            if arrangement[i] > arrangement[j] {
                e += degrees[arrangement[i]].pair(&degrees[arrangement[j]]);
            }
        }
    }
    e
}

/// Number of inversions of `arrangement`.
pub fn inversion_count(arrangement: &[usize]) -> i64 {
    let mut e = 0;
    for i in 0..arrangement.len() {
        for j in i + 1..arrangement.len() {
            if arrangement[i] > arrangement[j] {
                e += 1;
            }
        }
    }
    e
}

/// Koszul sign of the reordering `arrangement -> identity` for slots of the
/// given degrees.
pub fn koszul_sign(degrees: &[Degree], arrangement: &[usize]) -> Result<Sign> {
    check_arrangement(degrees.len(), arrangement)?;
    Ok(Sign::from_exponent(koszul_exponent(degrees, arrangement)))
}

/// Signature of the permutation `(I; J) -> I u J`. Indices are arbitrary
/// positive labels; `I` and `J` must be disjoint.
pub fn permutation_sign(i: &[usize], j: &[usize]) -> Result<Sign> {
    if i.iter().any(|x| j.contains(x)) {
        return input(format!("unshuffles {i:?} and {j:?} overlap"));
    }
    let concat: Vec<usize> = i.iter().chain(j).copied().collect();
    Ok(Sign::from_exponent(inversion_count(&concat)))
}
