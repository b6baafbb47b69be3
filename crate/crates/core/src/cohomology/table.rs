use std::collections::BTreeMap;

use super::cells::{Cell, CellBasis};
use crate::error::{input, Error, Result};
use crate::graded::{Degree, SpaceRef};
use crate::linalg::Matrix;
use crate::multilinear::{sequence_bracket, stem_bracket, Cochain, MapSequence, MultiMap};
use crate::scalar::Scalar;

/// A linear operator on `M(V)` that shifts bidegrees by a fixed amount.
pub trait Differential<S: Scalar> {
    fn space(&self) -> &SpaceRef;
    /// Shift `(Δweight, Δarity)` of the operator on underlying cells.
    fn shift(&self) -> (Degree, i64);
    /// Lowest arity index of the complex.
    fn min_arity_index(&self) -> i64;
    fn apply(&self, c: &Cochain<S>) -> Result<Cochain<S>>;
}

/// `[π, -]` in the stem bracket, with `π` of weight 0.
#[derive(Clone, Debug)]
pub struct StemDifferential<S: Scalar> {
    pub pi: MultiMap<S>,
    pub min_arity_index: i64,
}

impl<S: Scalar> StemDifferential<S> {
    /// The graded Loday coboundary on `M(V)`, elements included.
    pub fn loday(pi: MultiMap<S>) -> Self {
        StemDifferential { pi, min_arity_index: -1 }
    }

    /// `[π_p, -]` on `M_r(V)` (no elements).
    pub fn p_ary(pi: MultiMap<S>) -> Self {
        StemDifferential { pi, min_arity_index: 0 }
    }
}

impl<S: Scalar> Differential<S> for StemDifferential<S> {
    fn space(&self) -> &SpaceRef {
        self.pi.domain()
    }

    fn shift(&self) -> (Degree, i64) {
        (self.pi.weight().clone(), self.pi.arity_index())
    }

    fn min_arity_index(&self) -> i64 {
        self.min_arity_index
    }

    fn apply(&self, c: &Cochain<S>) -> Result<Cochain<S>> {
        stem_bracket(&Cochain::Map(self.pi.clone()), c)
    }
}

/// `[π, -]` in the sequence bracket for a structure with a single map `π_p`
/// of weight 0 (so base weight `(p-1) e1`), acting on single maps.
#[derive(Clone, Debug)]
pub struct SequenceDifferential<S: Scalar> {
    pub pi: MapSequence<S>,
    p: usize,
}

impl<S: Scalar> SequenceDifferential<S> {
    pub fn p_ary(pi_p: MultiMap<S>) -> Result<Self> {
        let space = pi_p.domain().clone();
        let base = &pi_p.weight().clone() + &((pi_p.arity() as i64 - 1) * &space.e1());
        let p = pi_p.arity();
        let pi = MapSequence::from_maps(space, base, vec![pi_p])?;
        Ok(SequenceDifferential { pi, p })
    }
}

impl<S: Scalar> Differential<S> for SequenceDifferential<S> {
    fn space(&self) -> &SpaceRef {
        self.pi.space()
    }

    fn shift(&self) -> (Degree, i64) {
        (self.pi.weight_at(self.p), self.p as i64 - 1)
    }

    fn min_arity_index(&self) -> i64 {
        0
    }

    fn apply(&self, c: &Cochain<S>) -> Result<Cochain<S>> {
        let Cochain::Map(m) = c else {
            return input("sequence cochains have arity index >= 0");
        };
        let space = self.space().clone();
        let t = m.arity();
        let base = m.weight() + &((t as i64 - 1) * &space.e1());
        let rho = MapSequence::from_maps(space.clone(), base, vec![m.clone()])?;
        let image = sequence_bracket(&self.pi, &rho)?;
        let (dw, da) = self.shift();
        let target = (t as i64 + da) as usize;
        if let Some(q) = image.maps().map(|(q, _)| q).find(|&q| q != target) {
            return Err(Error::WindowNotClosable(format!("coboundary has a component of arity {q}")));
        }
        let out = image.get(target).cloned().unwrap_or_else(|| MultiMap::zero_endo(space, target, m.weight() + &dw));
        Ok(Cochain::Map(out))
    }
}

/// How window labels map to cells of `M(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bigrading {
    /// Label `(A, a)` is `M^{(A,a)}(V)`.
    Plain,
    /// Label `(R, s-1)` is `M^{(R+(1-s)e1, s-1)}(V)`, the grading of `C(V)`.
    Shifted,
}

impl Bigrading {
    pub fn cell(self, label: &Cell) -> Cell {
        match self {
            Bigrading::Plain => label.clone(),
            Bigrading::Shifted => {
                let e1 = Degree::e1(label.weight.rank());
                Cell::new(&label.weight - &(label.arity_index * &e1), label.arity_index)
            }
        }
    }

    pub fn label(self, cell: &Cell) -> Cell {
        match self {
            Bigrading::Plain => cell.clone(),
            Bigrading::Shifted => {
                let e1 = Degree::e1(cell.weight.rank());
                Cell::new(&cell.weight + &(cell.arity_index * &e1), cell.arity_index)
            }
        }
    }
}

/// A finite set of bidegree labels: a weight box times an arity range.
#[derive(Clone, Debug)]
pub struct CochainWindow {
    pub weights: Vec<Degree>,
    pub arity_min: i64,
    pub arity_max: i64,
    pub bigrading: Bigrading,
}

impl CochainWindow {
    pub fn new(weights: Vec<Degree>, arity_min: i64, arity_max: i64) -> Self {
        CochainWindow { weights, arity_min, arity_max, bigrading: Bigrading::Plain }
    }

    pub fn shifted(mut self) -> Self {
        self.bigrading = Bigrading::Shifted;
        self
    }

    pub fn labels(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for w in &self.weights {
            for a in self.arity_min..=self.arity_max {
                out.push(Cell::new(w.clone(), a));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub label: Cell,
    pub cell: Cell,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub bigrading: Bigrading,
    pub cells: Vec<CellReport>,
}

impl CohomologyReport {
    pub fn get(&self, label: &Cell) -> Option<&CellReport> {
        self.cells.iter().find(|c| &c.label == label)
    }

    pub fn by_cell(&self) -> BTreeMap<Cell, &CellReport> {
        self.cells.iter().map(|c| (c.cell.clone(), c)).collect()
    }
}

/// Matrix of `d` from `cell` to its target cell, in the standard bases.
pub fn differential_matrix<S: Scalar>(d: &dyn Differential<S>, cell: &Cell) -> Result<Matrix<S>> {
    let (dw, da) = d.shift();
    let src = CellBasis::new(d.space(), cell);
    let dst = CellBasis::new(d.space(), &Cell::new(&cell.weight + &dw, cell.arity_index + da));
    let mut cols = Vec::with_capacity(src.dim());
    for k in 0..src.dim() {
        let image = d.apply(&src.element(k))?;
        let coords = dst.coordinates(&image).map_err(|e| match e {
            Error::WindowNotClosable(m) => Error::WindowNotClosable(format!("cell {cell}: {m}")),
            other => other,
        })?;
        cols.push(coords);
    }
    Ok(Matrix::from_columns(dst.dim(), &cols))
}

/// Exact cohomology dimensions in every cell of the window. Kernels use the
/// operator leaving the cell; images use the operator entering it, whose
/// source cell may lie outside the window.
pub fn cohomology_table<S: Scalar>(d: &dyn Differential<S>, window: &CochainWindow) -> Result<CohomologyReport> {
    if window.arity_min < d.min_arity_index() {
        return input(format!(
            "window starts at arity index {}, below the complex's {}",
            window.arity_min,
            d.min_arity_index()
        ));
    }
    let (dw, da) = d.shift();
    let mut cells = Vec::new();
    for label in window.labels() {
        let cell = window.bigrading.cell(&label);
        let dim = CellBasis::new(d.space(), &cell).dim();
        let out_rank = if dim == 0 { 0 } else { differential_matrix(d, &cell)?.rank() };
        let src = Cell::new(&cell.weight - &dw, cell.arity_index - da);
        let in_rank = if src.arity_index < d.min_arity_index() || dim == 0 {
            0
        } else {
            differential_matrix(d, &src)?.rank()
        };
        let cocycles = dim - out_rank;
        if in_rank > cocycles {
            return Err(Error::Internal(format!("operator does not square to zero at cell {cell}")));
        }
        cells.push(CellReport {
            label,
            cell,
            dim_cochains: dim,
            dim_cocycles: cocycles,
            dim_coboundaries: in_rank,
            dim_h: cocycles - in_rank,
        });
    }
    Ok(CohomologyReport { bigrading: window.bigrading, cells })
}

/// Cohomology of a `p`-ary Loday structure computed twice: with `[π_p,-]` on
/// the plain bigrading and with the sequence bracket on the shifted one.
/// Returns both tables and whether they agree cell by cell.
pub fn bidegree_correspondence<S: Scalar>(
    pi_p: &MultiMap<S>,
    weights: &[Degree],
    arity_min: i64,
    arity_max: i64,
) -> Result<(CohomologyReport, CohomologyReport, bool)> {
    if !super::check_p_ary(pi_p, pi_p.arity())? {
        return input("not a p-ary Loday structure");
    }
    let plain = CochainWindow::new(weights.to_vec(), arity_min, arity_max);
    let h = cohomology_table(&StemDifferential::p_ary(pi_p.clone()), &plain)?;
    let labels: Vec<Degree> = {
        let mut v: Vec<Degree> = Vec::new();
        for c in plain.labels() {
            let l = Bigrading::Shifted.label(&c).weight;
            if !v.contains(&l) {
                v.push(l);
            }
        }
        v
    };
    let shifted = CochainWindow::new(labels, arity_min, arity_max).shifted();
    let hbar = cohomology_table(&SequenceDifferential::p_ary(pi_p.clone())?, &shifted)?;
    let bar_cells = hbar.by_cell();
    let agree = h.cells.iter().all(|c| {
        bar_cells.get(&c.cell).is_some_and(|b| {
            b.dim_h == c.dim_h && b.dim_cocycles == c.dim_cocycles && b.label == Bigrading::Shifted.label(&c.cell)
        })
    });
    Ok((h, hbar, agree))
}
