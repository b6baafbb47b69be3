use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::graded::Degree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: Degree,
}

/// A finite-dimensional `Z^n`-graded vector space with a named, ordered basis.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    n: usize,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

pub type SpaceRef = Arc<GradedSpace>;

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(n: usize, basis: Vec<BasisElement>) -> Result<Self> {
        if n == 0 {
            return input("grading rank n must be at least 1");
        }
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if b.degree.rank() != n {
                return input(format!(
                    "basis element {} has degree of rank {}, expected {n}",
                    b.name,
                    b.degree.rank()
                ));
            }
            if index.insert(b.name.clone(), i).is_some() {
                return input(format!("duplicate basis name {}", b.name));
            }
        }
        Ok(GradedSpace { n, basis, index })
    }

    /// Convenience constructor from `(name, degree components)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(&str, &[i64])]) -> Result<SpaceRef> {
        let basis = pairs
            .iter()
            .map(|(name, d)| BasisElement {
                name: name.to_string(),
                degree: Degree::new(d.to_vec()),
            })
            .collect();
        Ok(Arc::new(GradedSpace::new(n, basis)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.basis[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown basis name {name}")))
    }

    pub fn zero_degree(&self) -> Degree {
        Degree::zero(self.n)
    }

    pub fn e1(&self) -> Degree {
        Degree::e1(self.n)
    }

    /// Basis indices of the given degree, in basis order.
    pub fn indices_of_degree(&self, d: &Degree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == d).collect()
    }

    pub fn degrees(&self) -> BTreeSet<Degree> {
        self.basis.iter().map(|b| b.degree.clone()).collect()
    }

    /// Same basis, every degree decreased by `shift`.
    pub fn shifted_down(&self, shift: &Degree) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                name: b.name.clone(),
                degree: &b.degree - shift,
            })
            .collect();
        GradedSpace::new(self.n, basis).expect("shift preserves validity")
    }

    /// The desuspension `↓V` with `(↓V)^a = V^{a + e1}`.
    pub fn desuspended(&self) -> GradedSpace {
        self.shifted_down(&self.e1())
    }

    /// `V ⊕ W`: basis of `self` followed by basis of `other`. Names must be disjoint.
    pub fn direct_sum(&self, other: &GradedSpace) -> Result<GradedSpace> {
        if self.n != other.n {
            return Err(Error::SpaceMismatch(format!(
                "grading ranks {} and {} differ",
                self.n, other.n
            )));
        }
        let basis = self.basis.iter().chain(&other.basis).cloned().collect();
        GradedSpace::new(self.n, basis)
    }

    pub fn relabeled(&self, suffix: &str) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                name: format!("{}{suffix}", b.name),
                degree: b.degree.clone(),
            })
            .collect();
        GradedSpace::new(self.n, basis).expect("suffix keeps names unique")
    }

    /// The subspace spanned by the listed basis elements.
    pub fn restricted(&self, indices: &[usize]) -> GradedSpace {
        let basis = indices.iter().map(|&i| self.basis[i].clone()).collect();
        GradedSpace::new(self.n, basis).expect("subset of a valid basis")
    }

    /// All tuples of basis indices of the given length, lexicographic.
    pub fn tuples(&self, len: usize) -> TupleIter {
        TupleIter::new(self.dim(), len)
    }
}

/// Lexicographic iterator over `dim^len` index tuples.
pub struct TupleIter {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl TupleIter {
    fn new(dim: usize, len: usize) -> Self {
        let current = if dim == 0 && len > 0 { None } else { Some(vec![0; len]) };
        TupleIter { dim, current }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.dim {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

pub fn same_space(a: &SpaceRef, b: &SpaceRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &SpaceRef, b: &SpaceRef, what: &str) -> Result<()> {
    if same_space(a, b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(what.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert!(GradedSpace::from_pairs(1, &[("x", &[0]), ("x", &[1])]).is_err());
        assert!(GradedSpace::from_pairs(2, &[("x", &[0])]).is_err());
    }

    #[test]
    fn tuple_iteration() {
        let v = GradedSpace::from_pairs(1, &[("x", &[0]), ("y", &[0]), ("z", &[1])]).unwrap();
        let all: Vec<_> = v.tuples(2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[8], vec![2, 2]);
        assert_eq!(v.tuples(0).count(), 1);
    }

    #[test]
    fn desuspension_shifts_first_component() {
        let v = GradedSpace::from_pairs(2, &[("a", &[1, 0]), ("b", &[0, 1])]).unwrap();
        let d = v.desuspended();
        assert_eq!(d.degree(0), &Degree::new(vec![0, 0]));
        assert_eq!(d.degree(1), &Degree::new(vec![-1, 1]));
    }
}
