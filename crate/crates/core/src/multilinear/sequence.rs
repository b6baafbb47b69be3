use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::graded::{ensure_same, same_space, Degree, SpaceRef};
use crate::scalar::Scalar;

use super::bracket::stem_bracket_maps;
use super::map::MultiMap;

/// A finitely supported sequence `(f_1, f_2, ...)` of multilinear maps with
/// `weight(f_p) = Q + (1-p) e1`.
///
/// Structure sequences and coboundary arguments are endomorphic; morphism
/// data uses base weight zero and a separate codomain.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSequence<S: Scalar> {
    domain: SpaceRef,
    codomain: SpaceRef,
    base_weight: Degree,
    maps: BTreeMap<usize, MultiMap<S>>,
}

impl<S: Scalar> MapSequence<S> {
    pub fn new(space: SpaceRef, base_weight: Degree) -> Self {
        Self::between(space.clone(), space, base_weight)
    }

    pub fn between(domain: SpaceRef, codomain: SpaceRef, base_weight: Degree) -> Self {
        assert_eq!(base_weight.rank(), domain.n());
        MapSequence { domain, codomain, base_weight, maps: BTreeMap::new() }
    }

    pub fn from_maps(space: SpaceRef, base_weight: Degree, maps: Vec<MultiMap<S>>) -> Result<Self> {
        let mut s = Self::new(space, base_weight);
        for m in maps {
            s.insert(m)?;
        }
        Ok(s)
    }

    /// `Q + (1-p) e1`.
    pub fn weight_at(&self, p: usize) -> Degree {
        &self.base_weight + &((1 - p as i64) * &self.domain.e1())
    }

    pub fn domain(&self) -> &SpaceRef {
        &self.domain
    }

    pub fn codomain(&self) -> &SpaceRef {
        &self.codomain
    }

    pub fn space(&self) -> &SpaceRef {
        &self.domain
    }

    pub fn base_weight(&self) -> &Degree {
        &self.base_weight
    }

    pub fn is_endo(&self) -> bool {
        same_space(&self.domain, &self.codomain)
    }

    /// Adds `m` into the slot of its arity, enforcing the weight rule.
    pub fn insert(&mut self, m: MultiMap<S>) -> Result<()> {
        ensure_same(m.domain(), &self.domain, "sequence domain")?;
        ensure_same(m.codomain(), &self.codomain, "sequence codomain")?;
        let p = m.arity();
        let want = self.weight_at(p);
        if m.weight() != &want {
            return Err(Error::Weight(format!(
                "map of arity {p} has weight {}, the sequence requires {want}",
                m.weight()
            )));
        }
        let slot = match self.maps.remove(&p) {
            Some(prev) => prev.add(&m)?,
            None => m,
        };
        if !slot.is_zero() {
            self.maps.insert(p, slot);
        }
        Ok(())
    }

    pub fn get(&self, p: usize) -> Option<&MultiMap<S>> {
        self.maps.get(&p)
    }

    /// The map at arity `p`, zero when absent.
    pub fn at(&self, p: usize) -> MultiMap<S> {
        self.maps
            .get(&p)
            .cloned()
            .unwrap_or_else(|| MultiMap::zero(self.domain.clone(), self.codomain.clone(), p, self.weight_at(p)))
    }

    pub fn maps(&self) -> impl Iterator<Item = (usize, &MultiMap<S>)> {
        self.maps.iter().map(|(&p, m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// Largest arity with a nonzero map.
    pub fn max_arity(&self) -> usize {
        self.maps.keys().next_back().copied().unwrap_or(0)
    }

    pub fn min_arity(&self) -> Option<usize> {
        self.maps.keys().next().copied()
    }

    /// Drops every map of arity above `n`.
    pub fn truncated(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.maps.retain(|&p, _| p <= n);
        out
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        ensure_same(&self.domain, &other.domain, "sequence domains")?;
        ensure_same(&self.codomain, &other.codomain, "sequence codomains")?;
        if self.base_weight != other.base_weight {
            return input(format!(
                "sequences of base weight {} and {} cannot be added",
                self.base_weight, other.base_weight
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for m in other.maps.values() {
            out.insert(m.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::between(self.domain.clone(), self.codomain.clone(), self.base_weight.clone());
        if !c.is_zero() {
            for (&p, m) in &self.maps {
                out.maps.insert(p, m.scale(c));
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }
}

/// `([pi, rho])_q = sum_{s+t=q+1} (-1)^{1+(s-1)<e1,rho>} [pi_s, rho_t]`.
pub fn sequence_bracket<S: Scalar>(pi: &MapSequence<S>, rho: &MapSequence<S>) -> Result<MapSequence<S>> {
    ensure_same(pi.space(), rho.space(), "sequence bracket")?;
    if !pi.is_endo() || !rho.is_endo() {
        return input("the sequence bracket needs endomorphic sequences");
    }
    let e1 = pi.space().e1();
    let rho_first = e1.pair(rho.base_weight());
    let mut out = MapSequence::new(pi.space().clone(), pi.base_weight() + rho.base_weight());
    for (s, a) in pi.maps() {
        for (t, b) in rho.maps() {
            let sign = S::sign_power(1 + (s as i64 - 1) * rho_first);
            let term = stem_bracket_maps(a, b)?;
            debug_assert_eq!(term.arity(), s + t - 1);
            out.insert(term.scale(&sign))?;
        }
    }
    Ok(out)
}
