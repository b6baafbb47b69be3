use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{Degree, LinComb, SpaceRef};
use crate::multilinear::{Cochain, DegreeMinusOneElement, MultiMap};
use crate::scalar::Scalar;

/// A bidegree `(weight, arity index)` of `M(V)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub weight: Degree,
    pub arity_index: i64,
}

impl Cell {
    pub fn new(weight: Degree, arity_index: i64) -> Self {
        Cell { weight, arity_index }
    }

    pub fn of<S: Scalar>(c: &Cochain<S>) -> Self {
        Cell::new(c.weight().clone(), c.arity_index())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.weight, self.arity_index)
    }
}

/// The standard basis of `M^{(A,a)}(V)`: one cochain per basis tuple and
/// admissible target vector.
#[derive(Clone, Debug)]
pub struct CellBasis {
    space: SpaceRef,
    cell: Cell,
    keys: Vec<(Vec<usize>, usize)>,
    index: BTreeMap<(Vec<usize>, usize), usize>,
}

impl CellBasis {
    pub fn new(space: &SpaceRef, cell: &Cell) -> Self {
        let mut keys = Vec::new();
        match cell.arity_index {
            a if a <= -2 => {}
            -1 => keys.extend(space.indices_of_degree(&cell.weight).into_iter().map(|i| (vec![], i))),
            a => {
                for t in space.tuples(a as usize + 1) {
                    let mut d = cell.weight.clone();
                    for &i in &t {
                        d = &d + space.degree(i);
                    }
                    for j in space.indices_of_degree(&d) {
                        keys.push((t.clone(), j));
                    }
                }
            }
        }
        let index = keys.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect();
        CellBasis { space: space.clone(), cell: cell.clone(), keys, index }
    }

    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn element<S: Scalar>(&self, k: usize) -> Cochain<S> {
        let mut coords = vec![S::zero(); self.dim()];
        coords[k] = S::one();
        self.cochain(&coords)
    }

    pub fn cochain<S: Scalar>(&self, coords: &[S]) -> Cochain<S> {
        let mut out = Cochain::zero(self.space.clone(), self.cell.weight.clone(), self.cell.arity_index);
        match &mut out {
            Cochain::Element(e) => {
                for (k, c) in coords.iter().enumerate() {
                    e.value.add_term(self.keys[k].1, c.clone());
                }
            }
            Cochain::Map(m) => {
                for (k, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        let (t, j) = &self.keys[k];
                        m.add_to_entry(t.clone(), &LinComb::single(*j, c.clone())).expect("basis entries are homogeneous");
                    }
                }
            }
            Cochain::Null { .. } => {}
        }
        out
    }

    /// Coordinates of a cochain of this cell; zero cochains of any cell are
    /// accepted.
    pub fn coordinates<S: Scalar>(&self, c: &Cochain<S>) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); self.dim()];
        if c.is_zero() {
            return Ok(out);
        }
        if Cell::of(c) != self.cell {
            return Err(Error::WindowNotClosable(format!("cochain of bidegree {} outside cell {}", Cell::of(c), self.cell)));
        }
        match c {
            Cochain::Element(DegreeMinusOneElement { value, .. }) => {
                for (j, x) in value.iter() {
                    out[self.index[&(vec![], *j)]] = x.clone();
                }
            }
            Cochain::Map(m) => {
                for (t, v) in m.entries() {
                    for (j, x) in v.iter() {
                        out[self.index[&(t.clone(), *j)]] = x.clone();
                    }
                }
            }
            Cochain::Null { .. } => {}
        }
        Ok(out)
    }

    pub fn map_coordinates<S: Scalar>(&self, m: &MultiMap<S>) -> Result<Vec<S>> {
        self.coordinates(&Cochain::Map(m.clone()))
    }
}
