use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::graded::{ensure_same, sum_degrees, Coeffs, Degree, LinComb, SpaceRef, Vector};
use crate::scalar::Scalar;

/// A homogeneous multilinear map `V^{×arity} → V'` of fixed weight, stored
/// on basis tuples. Missing tuples evaluate to zero.
///
/// Its bidegree in the bigraded space of cochains is `(weight, arity - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiMap<S: Scalar> {
    domain: SpaceRef,
    codomain: SpaceRef,
    arity: usize,
    weight: Degree,
    table: BTreeMap<Vec<usize>, Coeffs<S>>,
}

impl<S: Scalar> MultiMap<S> {
    pub fn zero(domain: SpaceRef, codomain: SpaceRef, arity: usize, weight: Degree) -> Self {
        assert!(arity >= 1, "multilinear maps take at least one argument");
        assert_eq!(weight.rank(), domain.n());
        MultiMap { domain, codomain, arity, weight, table: BTreeMap::new() }
    }

    /// Zero endomorphism-type map `V^{×arity} → V`.
    pub fn zero_endo(space: SpaceRef, arity: usize, weight: Degree) -> Self {
        Self::zero(space.clone(), space, arity, weight)
    }

    pub fn identity(space: SpaceRef) -> Self {
        let mut m = Self::zero_endo(space.clone(), 1, space.zero_degree());
        for i in 0..space.dim() {
            m.table.insert(vec![i], LinComb::single(i, S::one()));
        }
        m
    }

    /// Builds a map from named entries `(args, [(coeff, basis)])`, validating
    /// weight homogeneity of every value.
    pub fn from_named(
        domain: SpaceRef,
        codomain: SpaceRef,
        arity: usize,
        weight: Degree,
        entries: &[(&[&str], &[(S, &str)])],
    ) -> Result<Self> {
        let mut m = Self::zero(domain.clone(), codomain.clone(), arity, weight);
        for (args, value) in entries {
            let tuple = args.iter().map(|a| domain.index_of(a)).collect::<Result<Vec<_>>>()?;
            let mut c = LinComb::new();
            for (coeff, name) in value.iter() {
                c.add_term(codomain.index_of(name)?, coeff.clone());
            }
            m.add_to_entry(tuple, &c)?;
        }
        Ok(m)
    }

    pub fn domain(&self) -> &SpaceRef {
        &self.domain
    }

    pub fn codomain(&self) -> &SpaceRef {
        &self.codomain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `arity - 1`, the second component of the bidegree.
    pub fn arity_index(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn weight(&self) -> &Degree {
        &self.weight
    }

    pub fn is_endo(&self) -> bool {
        crate::graded::same_space(&self.domain, &self.codomain)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Coeffs<S>)> {
        self.table.iter()
    }

    pub fn nnz(&self) -> usize {
        self.table.len()
    }

    /// Degree that a value on `tuple` must have.
    pub fn target_degree(&self, tuple: &[usize]) -> Degree {
        let args = sum_degrees(self.domain.n(), tuple.iter().map(|&i| self.domain.degree(i)));
        &args + &self.weight
    }

    fn check_entry(&self, tuple: &[usize], value: &Coeffs<S>) -> Result<()> {
        if tuple.len() != self.arity {
            return input(format!("tuple {tuple:?} has wrong length for arity {}", self.arity));
        }
        if let Some(&bad) = tuple.iter().find(|&&i| i >= self.domain.dim()) {
            return input(format!("basis index {bad} out of range"));
        }
        let want = self.target_degree(tuple);
        for (&k, _) in value.iter() {
            if k >= self.codomain.dim() {
                return input(format!("output index {k} out of range"));
            }
            if self.codomain.degree(k) != &want {
                return Err(Error::Weight(format!(
                    "value on {} has a term {} of degree {}, expected {}",
                    self.describe_tuple(tuple),
                    self.codomain.name(k),
                    self.codomain.degree(k),
                    want
                )));
            }
        }
        Ok(())
    }

    pub fn describe_tuple(&self, tuple: &[usize]) -> String {
        let names: Vec<&str> = tuple.iter().map(|&i| self.domain.name(i)).collect();
        format!("({})", names.join(","))
    }

    /// Adds `value` to the entry at `tuple` after validating homogeneity.
    pub fn add_to_entry(&mut self, tuple: Vec<usize>, value: &Coeffs<S>) -> Result<()> {
        self.check_entry(&tuple, value)?;
        self.add_unchecked(tuple, value, &S::one());
        Ok(())
    }

    pub fn set_entry(&mut self, tuple: Vec<usize>, value: Coeffs<S>) -> Result<()> {
        self.check_entry(&tuple, &value)?;
        if value.is_zero() {
            self.table.remove(&tuple);
        } else {
            self.table.insert(tuple, value);
        }
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, tuple: Vec<usize>, value: &Coeffs<S>, factor: &S) {
        if value.is_zero() || factor.is_zero() {
            return;
        }
        let slot = self.table.entry(tuple.clone()).or_default();
        slot.add_scaled(value, factor);
        if slot.is_zero() {
            self.table.remove(&tuple);
        }
    }

    /// Value on a basis tuple.
    pub fn eval_basis(&self, tuple: &[usize]) -> Option<&Coeffs<S>> {
        self.table.get(tuple)
    }

    /// Multilinear evaluation on arbitrary coefficient vectors.
    pub fn eval(&self, args: &[Coeffs<S>]) -> Coeffs<S> {
        assert_eq!(args.len(), self.arity);
        let mut out = LinComb::new();
        for (tuple, value) in &self.table {
            let mut c = S::one();
            for (slot, &i) in tuple.iter().enumerate() {
                match args[slot].get(&i) {
                    Some(x) => c = c * x.clone(),
                    None => {
                        c = S::zero();
                        break;
                    }
                }
            }
            if !c.is_zero() {
                out.add_scaled(value, &c);
            }
        }
        out
    }

    pub fn eval_vectors(&self, args: &[Vector<S>]) -> Result<Vector<S>> {
        for a in args {
            ensure_same(a.space(), &self.domain, "argument space")?;
        }
        let coeffs: Vec<Coeffs<S>> = args.iter().map(|a| a.coeffs().clone()).collect();
        Ok(Vector::from_coeffs(self.codomain.clone(), self.eval(&coeffs)))
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        ensure_same(&self.domain, &other.domain, "map domains")?;
        ensure_same(&self.codomain, &other.codomain, "map codomains")?;
        if self.arity != other.arity || self.weight != other.weight {
            return input(format!(
                "maps of bidegree ({}, {}) and ({}, {}) cannot be added",
                self.weight,
                self.arity_index(),
                other.weight,
                other.arity_index()
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (t, v) in &other.table {
            out.add_unchecked(t.clone(), v, &S::one());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.domain.clone(), self.codomain.clone(), self.arity, self.weight.clone());
        if !c.is_zero() {
            for (t, v) in &self.table {
                out.table.insert(t.clone(), v.scaled(c));
            }
        }
        out
    }

    /// Composition `self ∘ inner` for unary maps.
    pub fn compose_unary(&self, inner: &Self) -> Result<Self> {
        if self.arity != 1 || inner.arity != 1 {
            return input("compose_unary expects two unary maps");
        }
        ensure_same(&inner.codomain, &self.domain, "composition")?;
        let mut out = Self::zero(inner.domain.clone(), self.codomain.clone(), 1, &self.weight + &inner.weight);
        for (t, v) in &inner.table {
            let w = self.eval(std::slice::from_ref(v));
            out.add_unchecked(t.clone(), &w, &S::one());
        }
        Ok(out)
    }
}

/// An element of `M^{(A,-1)}(V) = V^A`: a homogeneous vector together with
/// its degree, which is kept even when the vector is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeMinusOneElement<S: Scalar> {
    pub space: SpaceRef,
    pub degree: Degree,
    pub value: Coeffs<S>,
}

impl<S: Scalar> DegreeMinusOneElement<S> {
    pub fn new(space: SpaceRef, degree: Degree, value: Coeffs<S>) -> Result<Self> {
        for (&k, _) in value.iter() {
            if space.degree(k) != &degree {
                return Err(Error::Weight(format!(
                    "element term {} has degree {}, expected {}",
                    space.name(k),
                    space.degree(k),
                    degree
                )));
            }
        }
        Ok(DegreeMinusOneElement { space, degree, value })
    }

    pub fn from_vector(v: &Vector<S>) -> Result<Self> {
        let d = v.require_homogeneous()?;
        Self::new(v.space().clone(), d, v.coeffs().clone())
    }
}

/// An element of the bigraded cochain space `M(V)`: arity index `-1`
/// (vectors), `>= 0` (multilinear maps), or `<= -2` (always zero).
#[derive(Clone, Debug, PartialEq)]
pub enum Cochain<S: Scalar> {
    Null { space: SpaceRef, weight: Degree, arity_index: i64 },
    Element(DegreeMinusOneElement<S>),
    Map(MultiMap<S>),
}

impl<S: Scalar> Cochain<S> {
    pub fn space(&self) -> &SpaceRef {
        match self {
            Cochain::Null { space, .. } => space,
            Cochain::Element(e) => &e.space,
            Cochain::Map(m) => m.domain(),
        }
    }

    pub fn weight(&self) -> &Degree {
        match self {
            Cochain::Null { weight, .. } => weight,
            Cochain::Element(e) => &e.degree,
            Cochain::Map(m) => m.weight(),
        }
    }

    pub fn arity_index(&self) -> i64 {
        match self {
            Cochain::Null { arity_index, .. } => *arity_index,
            Cochain::Element(_) => -1,
            Cochain::Map(m) => m.arity_index(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Cochain::Null { .. } => true,
            Cochain::Element(e) => e.value.is_zero(),
            Cochain::Map(m) => m.is_zero(),
        }
    }

    /// Zero cochain of the given bidegree.
    pub fn zero(space: SpaceRef, weight: Degree, arity_index: i64) -> Self {
        match arity_index {
            a if a <= -2 => Cochain::Null { space, weight, arity_index: a },
            -1 => Cochain::Element(DegreeMinusOneElement { space, degree: weight, value: LinComb::new() }),
            a => Cochain::Map(MultiMap::zero_endo(space, a as usize + 1, weight)),
        }
    }

    pub fn as_map(&self) -> Option<&MultiMap<S>> {
        match self {
            Cochain::Map(m) => Some(m),
            _ => None,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        match self {
            Cochain::Null { .. } => self.clone(),
            Cochain::Element(e) => Cochain::Element(DegreeMinusOneElement {
                space: e.space.clone(),
                degree: e.degree.clone(),
                value: e.value.scaled(c),
            }),
            Cochain::Map(m) => Cochain::Map(m.scale(c)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Cochain::Map(a), Cochain::Map(b)) => Ok(Cochain::Map(a.add(b)?)),
            (Cochain::Element(a), Cochain::Element(b)) => {
                ensure_same(&a.space, &b.space, "element addition")?;
                if a.degree != b.degree {
                    return input("elements of different degrees cannot be added");
                }
                let mut v = a.value.clone();
                v.add_assign(&b.value);
                Ok(Cochain::Element(DegreeMinusOneElement { space: a.space.clone(), degree: a.degree.clone(), value: v }))
            }
            (Cochain::Null { .. }, Cochain::Null { .. }) => Ok(self.clone()),
            _ => input("cochains of different arity cannot be added"),
        }
    }

    /// Sum of two cochains that may be zero cochains of a different shape.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }
}

impl<S: Scalar> From<MultiMap<S>> for Cochain<S> {
    fn from(m: MultiMap<S>) -> Self {
        Cochain::Map(m)
    }
}
