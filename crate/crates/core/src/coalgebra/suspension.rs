use std::sync::Arc;

use crate::error::{input, Result};
use crate::graded::{GradedSpace, SpaceRef};
use crate::multilinear::{MapSequence, MultiMap};
use crate::scalar::Scalar;

use super::coderivation::Coderivation;
use super::cohomomorphism::Cohomomorphism;

/// `↓V`, sharing basis indices with `V`.
pub fn down(space: &SpaceRef) -> SpaceRef {
    Arc::new(space.desuspended())
}

/// `↑W` for `W = ↓V`.
pub fn up(space: &SpaceRef) -> SpaceRef {
    Arc::new(space.shifted_down(&-space.e1()))
}

/// Exponent of `↓^{⊗p}(v_1...v_p) = (-1)^{Σ_s <(p-s)e1, v_s>} ↓v_1...↓v_p`,
/// with `v_s` read in `space` (the undesuspended side).
pub fn desuspension_exponent(space: &GradedSpace, word: &[usize]) -> i64 {
    let p = word.len() as i64;
    word.iter()
        .enumerate()
        .map(|(s, &i)| (p - 1 - s as i64) * space.degree(i).first())
        .sum()
}

/// `(-1)^{p(p-1)/2} ↑^{⊗p}`, the inverse of `↓^{⊗p}`, applied to a word of
/// `↓V`; `space` is `V`.
pub fn suspension_exponent(space: &GradedSpace, word: &[usize]) -> i64 {
    desuspension_exponent(space, word)
}

/// `σ^{-1}(π_p) = (-1)^{p(p-1)/2} ↓ ∘ π_p ∘ ↑^{⊗p}`, a map `↓V^{⊗p} -> ↓V'`.
pub fn sigma_inverse<S: Scalar>(pi: &MultiMap<S>, down_dom: &SpaceRef, down_cod: &SpaceRef) -> MultiMap<S> {
    let p = pi.arity();
    let weight = pi.weight() + &((p as i64 - 1) * &pi.domain().e1());
    let mut out = MultiMap::zero(down_dom.clone(), down_cod.clone(), p, weight);
    for (t, v) in pi.entries() {
        let e = desuspension_exponent(pi.domain(), t);
        out.add_unchecked(t.clone(), v, &S::sign_power(e));
    }
    out
}

/// `σ(Q_p) = ↑ ∘ Q_p ∘ ↓^{⊗p}`, a map `V^{⊗p} -> V'`.
pub fn sigma<S: Scalar>(q: &MultiMap<S>, dom: &SpaceRef, cod: &SpaceRef) -> MultiMap<S> {
    let p = q.arity();
    let weight = q.weight() - &((p as i64 - 1) * &dom.e1());
    let mut out = MultiMap::zero(dom.clone(), cod.clone(), p, weight);
    for (t, v) in q.entries() {
        let e = desuspension_exponent(dom, t);
        out.add_unchecked(t.clone(), v, &S::sign_power(e));
    }
    out
}

/// `φ(A)`: the coderivation of `T(↓V)` whose only corestriction is
/// `(-1)^{a(a+1)/2} ↓ ∘ A ∘ ↑^{⊗(a+1)}`, of weight `A + a e1`.
pub fn phi<S: Scalar>(a: &MultiMap<S>, down_space: &SpaceRef) -> Result<Coderivation<S>> {
    let q = sigma_inverse(a, down_space, down_space);
    Coderivation::from_corestrictions(down_space.clone(), q.weight().clone(), vec![q])
}

/// Inverse of [`phi`] on a coderivation with a single corestriction of arity `a+1`.
pub fn phi_inverse<S: Scalar>(q: &Coderivation<S>, arity: usize, space: &SpaceRef) -> Result<MultiMap<S>> {
    if q.corestrictions().any(|(p, _)| p != arity) {
        return input(format!("coderivation has corestrictions outside arity {arity}"));
    }
    Ok(match q.corestriction(arity) {
        Some(m) => sigma(m, space, space),
        None => MultiMap::zero_endo(space.clone(), arity, q.weight() - &((arity as i64 - 1) * &space.e1())),
    })
}

/// `φ` on sequences: every `π_p` goes to `σ^{-1}(π_p)`, all of weight `Q`.
pub fn phi_sequence<S: Scalar>(pi: &MapSequence<S>, down_space: &SpaceRef) -> Result<Coderivation<S>> {
    let maps = pi.maps().map(|(_, m)| sigma_inverse(m, down_space, down_space)).collect();
    Coderivation::from_corestrictions(down_space.clone(), pi.base_weight().clone(), maps)
}

pub fn phi_sequence_inverse<S: Scalar>(q: &Coderivation<S>, space: &SpaceRef) -> Result<MapSequence<S>> {
    let maps = q.corestrictions().map(|(_, m)| sigma(m, space, space)).collect();
    MapSequence::from_maps(space.clone(), q.weight().clone(), maps)
}

/// The cohomomorphism `T(↓V) -> T(↓V')` with corestrictions `σ^{-1}(f_p)`.
pub fn morphism_to_cohomomorphism<S: Scalar>(
    f: &MapSequence<S>,
    down_src: &SpaceRef,
    down_dst: &SpaceRef,
) -> Result<Cohomomorphism<S>> {
    let maps = f.maps().map(|(_, m)| sigma_inverse(m, down_src, down_dst)).collect();
    Cohomomorphism::from_corestrictions(down_src.clone(), down_dst.clone(), maps)
}

pub fn cohomomorphism_to_morphism<S: Scalar>(
    f: &Cohomomorphism<S>,
    src: &SpaceRef,
    dst: &SpaceRef,
) -> Result<MapSequence<S>> {
    let mut out = MapSequence::between(src.clone(), dst.clone(), src.zero_degree());
    for (_, m) in f.corestrictions() {
        out.insert(sigma(m, src, dst))?;
    }
    Ok(out)
}
