use crate::coalgebra::{down, is_codifferential, phi_sequence, Coderivation};
use crate::error::{input, Error, Result};
use crate::graded::{Coeffs, SpaceRef};
use crate::multilinear::{sequence_bracket, MapSequence, MultiMap};
use crate::scalar::Scalar;
use std::sync::Arc;

pub const DEFAULT_MAX_ARITY: usize = 4;

/// A Loday infinity structure: structure maps `π_p` of weight
/// `Q + (1-p) e1` with `Q` odd, certified up to arity `max_arity`.
#[derive(Clone, Debug, PartialEq)]
pub struct LodInftyStructure<S: Scalar> {
    maps: MapSequence<S>,
    max_arity: usize,
}

/// Result of [`LodInftyStructure::check`].
///
/// `failing_p` uses the indexing `Σ_{s+t=p}`, so the failing multilinear
/// map has arity `p - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LodInftyReport<S: Scalar> {
    pub holds: bool,
    pub failing_p: Option<usize>,
    pub failing_tuple: Option<Vec<usize>>,
    pub residual: Option<Coeffs<S>>,
}

impl<S: Scalar> LodInftyStructure<S> {
    pub fn new(maps: MapSequence<S>, max_arity: usize) -> Result<Self> {
        if !maps.base_weight().is_odd() {
            return Err(Error::EvenWeight(maps.base_weight().to_string()));
        }
        if !maps.is_endo() {
            return input("structure maps must be endomorphic");
        }
        if let Some(p) = maps.maps().map(|(p, _)| p).find(|&p| p > max_arity) {
            return input(format!("structure map of arity {p} exceeds max arity {max_arity}"));
        }
        Ok(LodInftyStructure { maps, max_arity })
    }

    /// The usual weight-`e1` structure from its maps.
    pub fn from_maps(space: SpaceRef, maps: Vec<MultiMap<S>>, max_arity: usize) -> Result<Self> {
        let e1 = space.e1();
        Self::new(MapSequence::from_maps(space, e1, maps)?, max_arity)
    }

    pub fn maps(&self) -> &MapSequence<S> {
        &self.maps
    }

    pub fn space(&self) -> &SpaceRef {
        self.maps.space()
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn with_max_arity(&self, max_arity: usize) -> Result<Self> {
        Self::new(self.maps.truncated(max_arity), max_arity)
    }

    pub fn at(&self, p: usize) -> MultiMap<S> {
        self.maps.at(p)
    }

    pub fn codifferential(&self) -> Result<Coderivation<S>> {
        phi_sequence(&self.maps, &down(self.space()))
    }

    /// `Σ_{s+t=p} (-1)^{1+(s-1)<e1,Q>} [π_s, π_t] = 0` for `p = 2..=N+1`,
    /// i.e. for every resulting arity up to `N`.
    pub fn check(&self) -> LodInftyReport<S> {
        let square = sequence_bracket(&self.maps, &self.maps).expect("a structure brackets with itself");
        for arity in 1..=self.max_arity {
            if let Some(m) = square.get(arity) {
                let (t, v) = m.entries().next().expect("stored maps are nonzero");
                return LodInftyReport {
                    holds: false,
                    failing_p: Some(arity + 1),
                    failing_tuple: Some(t.clone()),
                    residual: Some(v.clone()),
                };
            }
        }
        LodInftyReport { holds: true, failing_p: None, failing_tuple: None, residual: None }
    }

    /// The same condition read on the codifferential `φ(π)` of `T(↓V)`.
    pub fn check_coalgebraic(&self) -> Result<bool> {
        Ok(is_codifferential(&self.codifferential()?, self.max_arity)?.holds)
    }

    /// Block sum `π ⊕ π'` on `V ⊕ V'`; mixed tuples map to zero.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.maps.base_weight() != other.maps.base_weight() {
            return input(format!(
                "base weights {} and {} differ",
                self.maps.base_weight(),
                other.maps.base_weight()
            ));
        }
        let space: SpaceRef = Arc::new(self.space().direct_sum(other.space())?);
        let offset = self.space().dim();
        let mut seq = MapSequence::new(space.clone(), self.maps.base_weight().clone());
        for (part, shift) in [(self, 0usize), (other, offset)] {
            for (p, m) in part.maps.maps() {
                let mut out = MultiMap::zero_endo(space.clone(), p, m.weight().clone());
                for (t, v) in m.entries() {
                    let t2: Vec<usize> = t.iter().map(|&i| i + shift).collect();
                    let v2 = v.map_keys(|&i| i + shift);
                    out.add_to_entry(t2, &v2)?;
                }
                seq.insert(out)?;
            }
        }
        Self::new(seq, self.max_arity.max(other.max_arity))
    }

    /// The zero structure of weight `e1` on `space`.
    pub fn zero(space: SpaceRef, max_arity: usize) -> Self {
        let e1 = space.e1();
        LodInftyStructure { maps: MapSequence::new(space, e1), max_arity }
    }

    /// The same structure on a space with renamed basis.
    pub fn relabeled(&self, suffix: &str) -> Result<Self> {
        let space: SpaceRef = Arc::new(self.space().relabeled(suffix));
        let mut seq = MapSequence::new(space.clone(), self.maps.base_weight().clone());
        for (p, m) in self.maps.maps() {
            let mut out = MultiMap::zero_endo(space.clone(), p, m.weight().clone());
            for (t, v) in m.entries() {
                out.add_to_entry(t.clone(), v)?;
            }
            seq.insert(out)?;
        }
        Self::new(seq, self.max_arity)
    }
}

