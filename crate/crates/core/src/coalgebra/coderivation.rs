use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::graded::{
    enumerate_partitions, ensure_same, koszul_exponent, sum_degrees, Coeffs, Degree, LinComb, PartitionSchema,
    SpaceRef,
};
use crate::multilinear::MultiMap;
use crate::scalar::Scalar;

use super::tensor::{coproduct, word_degree, word_degrees, TensorPair, TensorVector, Word};

/// A coderivation of `(T(V), Δ)` of weight `Q`, stored through its
/// corestrictions `Q_p : V^{⊗p} -> V`, all of weight `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coderivation<S: Scalar> {
    space: SpaceRef,
    weight: Degree,
    parts: BTreeMap<usize, MultiMap<S>>,
}

impl<S: Scalar> Coderivation<S> {
    pub fn new(space: SpaceRef, weight: Degree) -> Self {
        Coderivation { space, weight, parts: BTreeMap::new() }
    }

    pub fn from_corestrictions(space: SpaceRef, weight: Degree, maps: Vec<MultiMap<S>>) -> Result<Self> {
        let mut q = Self::new(space, weight);
        for m in maps {
            q.insert(m)?;
        }
        Ok(q)
    }

    pub fn insert(&mut self, m: MultiMap<S>) -> Result<()> {
        ensure_same(m.domain(), &self.space, "corestriction domain")?;
        ensure_same(m.codomain(), &self.space, "corestriction codomain")?;
        if m.weight() != &self.weight {
            return Err(Error::Weight(format!(
                "corestriction of weight {} in a coderivation of weight {}",
                m.weight(),
                self.weight
            )));
        }
        let p = m.arity();
        let slot = match self.parts.remove(&p) {
            Some(prev) => prev.add(&m)?,
            None => m,
        };
        if !slot.is_zero() {
            self.parts.insert(p, slot);
        }
        Ok(())
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn weight(&self) -> &Degree {
        &self.weight
    }

    pub fn corestriction(&self, p: usize) -> Option<&MultiMap<S>> {
        self.parts.get(&p)
    }

    pub fn corestrictions(&self) -> impl Iterator<Item = (usize, &MultiMap<S>)> {
        self.parts.iter().map(|(&p, m)| (p, m))
    }

    pub fn max_arity(&self) -> usize {
        self.parts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// `pr ∘ Q` on a single word: `Q_{|w|}(w)`.
    pub fn project_word(&self, word: &[usize]) -> Option<&Coeffs<S>> {
        self.parts.get(&word.len()).and_then(|m| m.eval_basis(word))
    }

    pub fn project(&self, t: &TensorVector<S>) -> Coeffs<S> {
        let mut out = LinComb::new();
        for (w, c) in t.iter() {
            if let Some(v) = self.project_word(w) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    /// The extension of the corestrictions to a coderivation, on one word:
    /// `Σ_{I,J<K} ε(I;J) (-1)^{<Q,V_I>} V_I ⊗ Q_{|J|+1}(V_J v_{k1}) ⊗ V_{K∖k1}`.
    pub fn apply_word(&self, word: &[usize]) -> TensorVector<S> {
        let mut out = LinComb::new();
        let p = word.len();
        if p == 0 || self.parts.is_empty() {
            return out;
        }
        let degs = word_degrees(&self.space, word);
        let n = self.space.n();
        for part in enumerate_partitions(PartitionSchema::ThreePart { len: p, j_len: None }).iter() {
            let (i, j, k) = (&part[0], &part[1], &part[2]);
            let Some(q) = self.parts.get(&(j.len() + 1)) else { continue };
            let mut args: Vec<usize> = j.iter().map(|&s| word[s]).collect();
            args.push(word[k[0]]);
            let Some(val) = q.eval_basis(&args) else { continue };
            let concat: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            let vi = sum_degrees(n, i.iter().map(|&s| &degs[s]));
            let sign = S::sign_power(koszul_exponent(&degs, &concat) + self.weight.pair(&vi));
            for (&mid, c) in val.iter() {
                let mut w: Word = i.iter().map(|&s| word[s]).collect();
                w.push(mid);
                w.extend(k[1..].iter().map(|&s| word[s]));
                out.add_term(w, sign.clone() * c.clone());
            }
        }
        out
    }

    pub fn apply(&self, t: &TensorVector<S>) -> TensorVector<S> {
        let mut out = LinComb::new();
        for (w, c) in t.iter() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }

    /// Recovers the corestrictions of the extension up to `max_arity` by
    /// projecting the extension onto length-one words.
    pub fn corestrict_extension(&self, max_arity: usize) -> Result<Self> {
        let mut out = Self::new(self.space.clone(), self.weight.clone());
        for p in 1..=max_arity {
            let mut m = MultiMap::zero_endo(self.space.clone(), p, self.weight.clone());
            for w in self.space.tuples(p) {
                let image = self.apply_word(&w);
                let mut v = LinComb::new();
                for (u, c) in image.iter() {
                    if u.len() == 1 {
                        v.add_term(u[0], c.clone());
                    }
                }
                m.add_to_entry(w, &v)?;
            }
            out.insert(m)?;
        }
        Ok(out)
    }

    /// `Δ(Qw) - (Q⊗id + id⊗Q)(Δw)`.
    pub fn co_leibniz_residual(&self, word: &[usize]) -> TensorPair<S> {
        let mut lhs: TensorPair<S> = LinComb::new();
        for (u, c) in self.apply_word(word).iter() {
            lhs.add_scaled(&coproduct(&self.space, u), c);
        }
        let mut rhs: TensorPair<S> = LinComb::new();
        for ((a, b), c) in coproduct::<S>(&self.space, word).iter() {
            for (qa, d) in self.apply_word(a).iter() {
                rhs.add_term((qa.clone(), b.clone()), c.clone() * d.clone());
            }
            let sign = S::sign_power(self.weight.pair(&word_degree(&self.space, a)));
            for (qb, d) in self.apply_word(b).iter() {
                rhs.add_term((a.clone(), qb.clone()), sign.clone() * c.clone() * d.clone());
            }
        }
        lhs.sub(&rhs)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::new(self.space.clone(), self.weight.clone());
        if !c.is_zero() {
            for (&p, m) in &self.parts {
                out.parts.insert(p, m.scale(c));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.space, &other.space, "coderivation sum")?;
        if self.weight != other.weight {
            return input("coderivations of different weights cannot be added");
        }
        let mut out = self.clone();
        for m in other.parts.values() {
            out.insert(m.clone())?;
        }
        Ok(out)
    }
}

/// Corestrictions of `Q ∘ R` up to arity `max_arity`, computed by composing
/// the extensions on words and projecting.
pub fn compose_corestrictions<S: Scalar>(
    q: &Coderivation<S>,
    r: &Coderivation<S>,
    max_arity: usize,
) -> Result<BTreeMap<usize, MultiMap<S>>> {
    ensure_same(q.space(), r.space(), "coderivation composition")?;
    let space = q.space().clone();
    let weight = q.weight() + r.weight();
    let mut out = BTreeMap::new();
    for p in 1..=max_arity {
        let mut m = MultiMap::zero_endo(space.clone(), p, weight.clone());
        for w in space.tuples(p) {
            let v = q.project(&r.apply_word(&w));
            m.add_to_entry(w, &v)?;
        }
        if !m.is_zero() {
            out.insert(p, m);
        }
    }
    Ok(out)
}

/// The graded commutator `[Q,R] = QR - (-1)^{<Q,R>} RQ`.
///
/// Corestrictions are computed exactly up to `max Q + max R - 1`, beyond
/// which they vanish.
pub fn commutator<S: Scalar>(q: &Coderivation<S>, r: &Coderivation<S>) -> Result<Coderivation<S>> {
    ensure_same(q.space(), r.space(), "commutator")?;
    let top = (q.max_arity() + r.max_arity()).saturating_sub(1);
    let weight = q.weight() + r.weight();
    let sign = S::sign_power(q.weight().pair(r.weight()));
    let qr = compose_corestrictions(q, r, top)?;
    let rq = compose_corestrictions(r, q, top)?;
    let mut out = Coderivation::new(q.space().clone(), weight);
    for m in qr.into_values() {
        out.insert(m)?;
    }
    for m in rq.into_values() {
        out.insert(m.scale(&-sign.clone()))?;
    }
    Ok(out)
}

/// First nonzero corestriction of `Q²` found by `is_codifferential`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodifferentialReport<S: Scalar> {
    pub holds: bool,
    pub failing_arity: Option<usize>,
    pub failing_word: Option<Word>,
    pub residual: Option<Coeffs<S>>,
}

/// Evaluates `Σ_{I,J<K} ε(I;J)(-1)^{<Q,V_I>} Q_{|I|+|K|}(V_I, Q_{|J|+1}(V_J,v_{k1}), V_{K∖k1})`
/// for every basis word of length `p <= max_arity`.
pub fn is_codifferential<S: Scalar>(q: &Coderivation<S>, max_arity: usize) -> Result<CodifferentialReport<S>> {
    if !q.weight().is_odd() {
        return Err(Error::EvenWeight(q.weight().to_string()));
    }
    let space = q.space();
    for p in 1..=max_arity {
        for w in space.tuples(p) {
            let residual = q.project(&q.apply_word(&w));
            if !residual.is_zero() {
                return Ok(CodifferentialReport {
                    holds: false,
                    failing_arity: Some(p),
                    failing_word: Some(w),
                    residual: Some(residual),
                });
            }
        }
    }
    Ok(CodifferentialReport { holds: true, failing_arity: None, failing_word: None, residual: None })
}
