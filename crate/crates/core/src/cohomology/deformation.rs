use std::fmt::Debug;

use super::cells::{Cell, CellBasis};
use crate::error::{input, Error, Result};
use crate::graded::{Degree, SpaceRef};
use crate::linalg::Matrix;
use crate::multilinear::{sequence_bracket, stem_bracket, Cochain, MapSequence};
use crate::scalar::Scalar;

/// A graded Lie algebra whose homogeneous components are finite-dimensional
/// with a fixed basis, so that linear equations in it can be solved exactly.
pub trait GradedLie<S: Scalar> {
    type Elem: Clone + PartialEq + Debug;
    type Deg: Clone + PartialEq + Debug;

    fn degree(&self, x: &Self::Elem) -> Self::Deg;
    fn deg_add(&self, a: &Self::Deg, b: &Self::Deg) -> Self::Deg;
    fn zero_degree(&self) -> Self::Deg;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, x: &Self::Elem, c: &S) -> Self::Elem;
    fn zero(&self, d: &Self::Deg) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn basis(&self, d: &Self::Deg) -> Vec<Self::Elem>;
    /// Coordinates of `x` in `basis(d)`.
    fn coordinates(&self, x: &Self::Elem, d: &Self::Deg) -> Result<Vec<S>>;
}

/// `(M(V), [-,-]^⊗)`, graded by `(weight, arity index)`.
#[derive(Clone, Debug)]
pub struct StemAlgebra {
    pub space: SpaceRef,
}

impl<S: Scalar> GradedLie<S> for StemAlgebra {
    type Elem = Cochain<S>;
    type Deg = Cell;

    fn degree(&self, x: &Cochain<S>) -> Cell {
        Cell::of(x)
    }

    fn deg_add(&self, a: &Cell, b: &Cell) -> Cell {
        Cell::new(&a.weight + &b.weight, a.arity_index + b.arity_index)
    }

    fn zero_degree(&self) -> Cell {
        Cell::new(self.space.zero_degree(), 0)
    }

    fn bracket(&self, x: &Cochain<S>, y: &Cochain<S>) -> Result<Cochain<S>> {
        stem_bracket(x, y)
    }

    fn add(&self, x: &Cochain<S>, y: &Cochain<S>) -> Result<Cochain<S>> {
        x.add(y)
    }

    fn scale(&self, x: &Cochain<S>, c: &S) -> Cochain<S> {
        x.scale(c)
    }

    fn zero(&self, d: &Cell) -> Cochain<S> {
        Cochain::zero(self.space.clone(), d.weight.clone(), d.arity_index)
    }

    fn is_zero(&self, x: &Cochain<S>) -> bool {
        x.is_zero()
    }

    fn basis(&self, d: &Cell) -> Vec<Cochain<S>> {
        let b = CellBasis::new(&self.space, d);
        (0..b.dim()).map(|k| b.element(k)).collect()
    }

    fn coordinates(&self, x: &Cochain<S>, d: &Cell) -> Result<Vec<S>> {
        CellBasis::new(&self.space, d).coordinates(x)
    }
}

/// `(C(V), [-,-]^{⊗̄})` truncated above arity `max_arity`, graded by the
/// base weight.
#[derive(Clone, Debug)]
pub struct SequenceAlgebra {
    pub space: SpaceRef,
    pub max_arity: usize,
}

impl SequenceAlgebra {
    fn cells(&self, d: &Degree) -> Vec<Cell> {
        let e1 = self.space.e1();
        (1..=self.max_arity).map(|s| Cell::new(d + &((1 - s as i64) * &e1), s as i64 - 1)).collect()
    }
}

impl<S: Scalar> GradedLie<S> for SequenceAlgebra {
    type Elem = MapSequence<S>;
    type Deg = Degree;

    fn degree(&self, x: &MapSequence<S>) -> Degree {
        x.base_weight().clone()
    }

    fn deg_add(&self, a: &Degree, b: &Degree) -> Degree {
        a + b
    }

    fn zero_degree(&self) -> Degree {
        self.space.zero_degree()
    }

    fn bracket(&self, x: &MapSequence<S>, y: &MapSequence<S>) -> Result<MapSequence<S>> {
        Ok(sequence_bracket(x, y)?.truncated(self.max_arity))
    }

    fn add(&self, x: &MapSequence<S>, y: &MapSequence<S>) -> Result<MapSequence<S>> {
        x.add(y)
    }

    fn scale(&self, x: &MapSequence<S>, c: &S) -> MapSequence<S> {
        x.scale(c)
    }

    fn zero(&self, d: &Degree) -> MapSequence<S> {
        MapSequence::new(self.space.clone(), d.clone())
    }

    fn is_zero(&self, x: &MapSequence<S>) -> bool {
        x.is_zero()
    }

    fn basis(&self, d: &Degree) -> Vec<MapSequence<S>> {
        let mut out = Vec::new();
        for cell in self.cells(d) {
            let b = CellBasis::new(&self.space, &cell);
            for k in 0..b.dim() {
                if let Cochain::Map(m) = b.element::<S>(k) {
                    out.push(MapSequence::from_maps(self.space.clone(), d.clone(), vec![m]).expect("weight rule holds"));
                }
            }
        }
        out
    }

    fn coordinates(&self, x: &MapSequence<S>, d: &Degree) -> Result<Vec<S>> {
        if !x.is_zero() && x.base_weight() != d {
            return input(format!("sequence of base weight {} is not of degree {d}", x.base_weight()));
        }
        let mut out = Vec::new();
        for cell in self.cells(d) {
            let b = CellBasis::new(&self.space, &cell);
            out.extend(b.coordinates(&Cochain::Map(x.at(cell.arity_index as usize + 1)))?);
        }
        Ok(out)
    }
}

/// A formal deformation `π + ν π_1 + ... + ν^q π_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalDeformation<E> {
    pub base: E,
    /// `terms[i]` is the coefficient of `ν^{i+1}`.
    pub terms: Vec<E>,
}

impl<E: Clone> FormalDeformation<E> {
    pub fn new(base: E, terms: Vec<E>) -> Self {
        FormalDeformation { base, terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, i: usize) -> &E {
        if i == 0 {
            &self.base
        } else {
            &self.terms[i - 1]
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationReport<E> {
    pub holds: bool,
    pub failing_order: Option<usize>,
    pub residual: Option<E>,
}

fn check_homogeneous<S: Scalar, G: GradedLie<S>>(g: &G, d: &FormalDeformation<G::Elem>) -> Result<G::Deg> {
    let deg = g.degree(&d.base);
    for (i, t) in d.terms.iter().enumerate() {
        if !g.is_zero(t) && g.degree(t) != deg {
            return input(format!("coefficient of order {} has degree {:?}, expected {:?}", i + 1, g.degree(t), deg));
        }
    }
    Ok(deg)
}

/// `Σ_{i+j=p} {π_i, π_j}`.
pub fn deformation_sum<S: Scalar, G: GradedLie<S>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
    p: usize,
    skip_ends: bool,
) -> Result<G::Elem> {
    let deg = g.degree(&d.base);
    let mut acc = g.zero(&g.deg_add(&deg, &deg));
    for i in 0..=p {
        let j = p - i;
        if skip_ends && (i == 0 || j == 0) {
            continue;
        }
        if i > d.order() || j > d.order() {
            continue;
        }
        let b = g.bracket(d.coefficient(i), d.coefficient(j))?;
        if !g.is_zero(&b) {
            acc = g.add(&acc, &b)?;
        }
    }
    Ok(acc)
}

/// Checks `Σ_{i+j=p} {π_i, π_j} = 0` for `1 <= p <= q`.
pub fn deformation_check<S: Scalar, G: GradedLie<S>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
) -> Result<DeformationReport<G::Elem>> {
    check_homogeneous(g, d)?;
    for p in 1..=d.order() {
        let s = deformation_sum(g, d, p, false)?;
        if !g.is_zero(&s) {
            return Ok(DeformationReport { holds: false, failing_order: Some(p), residual: Some(s) });
        }
    }
    Ok(DeformationReport { holds: true, failing_order: None, residual: None })
}

/// Solves `{π, x} = target` for `x` of degree `deg`.
pub fn solve_coboundary<S: Scalar, G: GradedLie<S>>(
    g: &G,
    pi: &G::Elem,
    deg: &G::Deg,
    target: &G::Elem,
) -> Result<Option<G::Elem>> {
    let out_deg = g.deg_add(&g.degree(pi), deg);
    let basis = g.basis(deg);
    let rhs = g.coordinates(target, &out_deg)?;
    if basis.is_empty() {
        return Ok(rhs.iter().all(|c| c.is_zero()).then(|| g.zero(deg)));
    }
    let cols = basis
        .iter()
        .map(|b| g.coordinates(&g.bracket(pi, b)?, &out_deg))
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(rhs.len(), &cols);
    Ok(m.solve(&rhs).map(|x| {
        let mut acc = g.zero(deg);
        for (c, b) in x.iter().zip(&basis) {
            if !c.is_zero() {
                acc = g.add(&acc, &g.scale(b, c)).expect("same degree");
            }
        }
        acc
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport<E> {
    /// `E_{q+1} = Σ_{k+l=q+1, k,l>=1} {π_k, π_l}`, so that the next order
    /// condition reads `E_{q+1} = -2 ∂_π π_{q+1}`.
    pub obstruction: E,
    pub is_cocycle: bool,
    /// A solution `π_{q+1}` when `E_{q+1}` is a coboundary.
    pub extension: Option<E>,
}

impl<E> ObstructionReport<E> {
    pub fn extendable(&self) -> bool {
        self.extension.is_some()
    }
}

pub fn obstruction_class<S: Scalar, G: GradedLie<S>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
) -> Result<ObstructionReport<G::Elem>> {
    let deg = check_homogeneous(g, d)?;
    let rep = deformation_check(g, d)?;
    if let Some(p) = rep.failing_order {
        return Err(Error::DeformationFails(p));
    }
    let e = deformation_sum(g, d, d.order() + 1, true)?;
    let is_cocycle = g.is_zero(&g.bracket(&d.base, &e)?);
    let half = S::one() / S::from_int(-2);
    let extension = solve_coboundary(g, &d.base, &deg, &g.scale(&e, &half))?;
    Ok(ObstructionReport { obstruction: e, is_cocycle, extension })
}

/// `exp(ad χ_ν) π_ν` up to order `q`; `chi[i]` is the coefficient of `ν^i`
/// and `chi[0]` must vanish.
pub fn gauge_action<S: Scalar, G: GradedLie<S>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
    chi: &[G::Elem],
) -> Result<FormalDeformation<G::Elem>> {
    let deg = check_homogeneous(g, d)?;
    if chi.first().is_some_and(|c| !g.is_zero(c)) {
        return input("the gauge series must start at order 1");
    }
    for c in chi.iter().skip(1) {
        if !g.is_zero(c) && g.degree(c) != g.zero_degree() {
            return input("gauge coefficients must have degree 0");
        }
    }
    let q = d.order();
    let chi_at = |i: usize| chi.get(i).filter(|c| !g.is_zero(c));
    // layer[p] = coefficient of ν^p in (ad χ)^k π_ν
    let mut layer: Vec<G::Elem> = (0..=q).map(|p| d.coefficient(p).clone()).collect();
    let mut result = layer.clone();
    let mut factorial = S::one();
    for k in 1..=q {
        factorial = factorial * S::from_int(k as i64);
        let mut next: Vec<G::Elem> = (0..=q).map(|_| g.zero(&deg)).collect();
        for p in 0..=q {
            for i in 1..=p {
                if let Some(c) = chi_at(i) {
                    let b = g.bracket(c, &layer[p - i])?;
                    if !g.is_zero(&b) {
                        next[p] = g.add(&next[p], &b)?;
                    }
                }
            }
        }
        let inv = S::one() / factorial.clone();
        for p in 0..=q {
            if !g.is_zero(&next[p]) {
                result[p] = g.add(&result[p], &g.scale(&next[p], &inv))?;
            }
        }
        layer = next;
    }
    let base = result.remove(0);
    Ok(FormalDeformation::new(base, result))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StraighteningReport<E> {
    /// The successive gauge elements `χ_r` (at order `r`), index 0 unused.
    pub chi: Vec<E>,
    pub result: FormalDeformation<E>,
    /// Whether every coefficient up to the order vanishes at the end.
    pub trivialized: bool,
    /// First order whose coefficient could not be removed.
    pub stuck_at: Option<usize>,
}

/// Removes the coefficients of a deformation order by order: at order `r`
/// solve `∂_π χ_r = π_r` and apply `exp(ad ν^r χ_r)`.
pub fn straighten<S: Scalar, G: GradedLie<S>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
) -> Result<StraighteningReport<G::Elem>> {
    let rep = deformation_check(g, d)?;
    if let Some(p) = rep.failing_order {
        return Err(Error::DeformationFails(p));
    }
    let q = d.order();
    let zero_deg = g.zero_degree();
    let mut cur = d.clone();
    let mut chi = vec![g.zero(&zero_deg)];
    for r in 1..=q {
        let target = cur.coefficient(r).clone();
        let Some(x) = solve_coboundary(g, &cur.base, &zero_deg, &target)? else {
            chi.resize(q + 1, g.zero(&zero_deg));
            return Ok(StraighteningReport { chi, result: cur, trivialized: false, stuck_at: Some(r) });
        };
        let mut series: Vec<G::Elem> = (0..=r).map(|_| g.zero(&zero_deg)).collect();
        series[r] = x.clone();
        cur = gauge_action(g, &cur, &series)?;
        chi.push(x);
    }
    let trivialized = cur.terms.iter().all(|t| g.is_zero(t));
    Ok(StraighteningReport { chi, result: cur, trivialized, stuck_at: None })
}

/// Whether two infinitesimal deformations differ by a coboundary.
pub fn first_order_equivalent<S: Scalar, G: GradedLie<S>>(
    g: &G,
    pi: &G::Elem,
    a: &G::Elem,
    b: &G::Elem,
) -> Result<bool> {
    let diff = g.add(a, &g.scale(b, &-S::one()))?;
    Ok(solve_coboundary(g, pi, &g.zero_degree(), &diff)?.is_some())
}
