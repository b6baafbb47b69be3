use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{enumerate_partitions, ensure_same, koszul_exponent, Coeffs, LinComb, PartitionSchema, SpaceRef};
use crate::multilinear::MultiMap;
use crate::scalar::Scalar;

use super::coderivation::Coderivation;
use super::tensor::{coproduct, tensor_of, word_degrees, TensorPair, TensorVector};

/// A coalgebra cohomomorphism `T(V) -> T(V')` stored through its weight-zero
/// corestrictions `F_p : V^{⊗p} -> V'`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cohomomorphism<S: Scalar> {
    source: SpaceRef,
    target: SpaceRef,
    parts: BTreeMap<usize, MultiMap<S>>,
}

impl<S: Scalar> Cohomomorphism<S> {
    pub fn new(source: SpaceRef, target: SpaceRef) -> Self {
        Cohomomorphism { source, target, parts: BTreeMap::new() }
    }

    pub fn identity(space: SpaceRef) -> Self {
        let mut f = Self::new(space.clone(), space.clone());
        f.parts.insert(1, MultiMap::identity(space));
        f
    }

    pub fn from_corestrictions(source: SpaceRef, target: SpaceRef, maps: Vec<MultiMap<S>>) -> Result<Self> {
        let mut f = Self::new(source, target);
        for m in maps {
            f.insert(m)?;
        }
        Ok(f)
    }

    pub fn insert(&mut self, m: MultiMap<S>) -> Result<()> {
        ensure_same(m.domain(), &self.source, "cohomomorphism source")?;
        ensure_same(m.codomain(), &self.target, "cohomomorphism target")?;
        if !m.weight().is_zero() {
            return Err(Error::Weight(format!("cohomomorphism corestriction has weight {}", m.weight())));
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

    pub fn source(&self) -> &SpaceRef {
        &self.source
    }

    pub fn target(&self) -> &SpaceRef {
        &self.target
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

    /// `F(v_1...v_p) = Σ_s Σ ε(I^1;...;I^s) F(V_{I^1}) ⊗ ... ⊗ F(V_{I^s})` over
    /// ordered partitions into nonempty blocks with increasing maxima.
    pub fn apply_word(&self, word: &[usize]) -> TensorVector<S> {
        let mut out = LinComb::new();
        let p = word.len();
        if p == 0 {
            return out;
        }
        let degs = word_degrees(&self.source, word);
        'parts: for blocks in enumerate_partitions(PartitionSchema::Blocks { len: p, blocks: None }).iter() {
            let mut factors = Vec::with_capacity(blocks.len());
            for b in blocks {
                let args: Vec<usize> = b.iter().map(|&s| word[s]).collect();
                match self.project_word(&args) {
                    Some(v) => factors.push(v),
                    None => continue 'parts,
                }
            }
            let concat: Vec<usize> = blocks.iter().flatten().copied().collect();
            let sign = S::sign_power(koszul_exponent(&degs, &concat));
            out.add_scaled(&tensor_of(&factors), &sign);
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

    /// `Δ'(Fw) - (F⊗F)(Δw)`.
    pub fn law_residual(&self, word: &[usize]) -> TensorPair<S> {
        let mut lhs: TensorPair<S> = LinComb::new();
        for (u, c) in self.apply_word(word).iter() {
            lhs.add_scaled(&coproduct(&self.target, u), c);
        }
        let mut rhs: TensorPair<S> = LinComb::new();
        for ((a, b), c) in coproduct::<S>(&self.source, word).iter() {
            let fa = self.apply_word(a);
            let fb = self.apply_word(b);
            for (x, d) in fa.iter() {
                for (y, e) in fb.iter() {
                    rhs.add_term((x.clone(), y.clone()), c.clone() * d.clone() * e.clone());
                }
            }
        }
        lhs.sub(&rhs)
    }

    /// Corestrictions `(self ∘ inner)_p` for `p <= max_arity`.
    pub fn after(&self, inner: &Cohomomorphism<S>, max_arity: usize) -> Result<Cohomomorphism<S>> {
        ensure_same(inner.target(), &self.source, "cohomomorphism composition")?;
        let mut out = Cohomomorphism::new(inner.source.clone(), self.target.clone());
        for p in 1..=max_arity {
            let mut m = MultiMap::zero(inner.source.clone(), self.target.clone(), p, inner.source.zero_degree());
            for w in inner.source.tuples(p) {
                let v = self.project(&inner.apply_word(&w));
                m.add_to_entry(w, &v)?;
            }
            out.insert(m)?;
        }
        Ok(out)
    }

    /// Inverse cohomomorphism up to arity `max_arity`: `G_1 = F_1^{-1}` and
    /// `G_p = -F_1^{-1}(pr F G^{<p})(w)`, where `G^{<p}` is the extension built
    /// from the already known `G_1..G_{p-1}`.
    pub fn inverse(&self, max_arity: usize) -> Result<Cohomomorphism<S>> {
        let f1 = self
            .parts
            .get(&1)
            .ok_or_else(|| Error::Singular("first corestriction is zero".into()))?;
        let f1_inv = invert_linear(f1)?;
        let mut g = Cohomomorphism::new(self.target.clone(), self.source.clone());
        g.insert(f1_inv.clone())?;
        for p in 2..=max_arity {
            let mut m = MultiMap::zero(self.target.clone(), self.source.clone(), p, self.target.zero_degree());
            for w in self.target.tuples(p) {
                let partial = g.apply_word(&w);
                let mut longer: TensorVector<S> = LinComb::new();
                for (u, c) in partial.iter() {
                    if u.len() >= 2 {
                        longer.add_term(u.clone(), c.clone());
                    }
                }
                let v = self.project(&longer);
                let value = f1_inv.eval(&[v]).negated();
                m.add_to_entry(w, &value)?;
            }
            g.insert(m)?;
        }
        Ok(g)
    }

    /// Compares `self` and `other` word by word up to `max_length`.
    pub fn agrees_with(&self, other: &Cohomomorphism<S>, max_length: usize) -> bool {
        (1..=max_length).all(|p| {
            self.source.tuples(p).all(|w| self.apply_word(&w) == other.apply_word(&w))
        })
    }

    /// Whether `self` acts as the identity on every word of length `<= max_length`.
    pub fn is_identity_up_to(&self, max_length: usize) -> bool {
        (1..=max_length).all(|p| {
            self.source.tuples(p).all(|w| {
                let image = self.apply_word(&w);
                image.len() == 1 && image.coeff(&w) == S::one()
            })
        })
    }
}

/// Inverse of a degree-preserving unary map by exact elimination.
pub fn invert_linear<S: Scalar>(f: &MultiMap<S>) -> Result<MultiMap<S>> {
    use crate::linalg::Matrix;
    let (src, dst) = (f.domain().clone(), f.codomain().clone());
    if src.dim() != dst.dim() {
        return Err(Error::Singular(format!("dimensions {} and {} differ", src.dim(), dst.dim())));
    }
    let d = src.dim();
    let mut mat = Matrix::zeros(d, d);
    for (t, v) in f.entries() {
        for (&i, c) in v.iter() {
            mat.set(i, t[0], c.clone());
        }
    }
    let inv = mat.inverse().ok_or_else(|| Error::Singular("linear part is not bijective".into()))?;
    let mut out = MultiMap::zero(dst.clone(), src.clone(), 1, -f.weight());
    for j in 0..d {
        let col: Coeffs<S> = (0..d).map(|i| (i, inv.get(i, j).clone())).collect();
        out.add_to_entry(vec![j], &col)?;
    }
    Ok(out)
}

/// `Q' F - F Q` projected to `V'` on one word; zero for every word exactly
/// when `F` intertwines the two coderivations.
pub fn intertwining_residual<S: Scalar>(
    q_target: &Coderivation<S>,
    f: &Cohomomorphism<S>,
    q_source: &Coderivation<S>,
    word: &[usize],
) -> Coeffs<S> {
    let lhs = q_target.project(&f.apply_word(word));
    let rhs = f.project(&q_source.apply_word(word));
    lhs.sub(&rhs)
}

/// Corestrictions of `F Q G` up to `max_arity`, used for conjugation.
pub fn conjugate_coderivation<S: Scalar>(
    f: &Cohomomorphism<S>,
    q: &Coderivation<S>,
    g: &Cohomomorphism<S>,
    max_arity: usize,
) -> Result<Coderivation<S>> {
    ensure_same(g.target(), q.space(), "conjugation")?;
    ensure_same(q.space(), f.source(), "conjugation")?;
    let space = g.source().clone();
    let mut out = Coderivation::new(space.clone(), q.weight().clone());
    for p in 1..=max_arity {
        let mut m = MultiMap::zero_endo(space.clone(), p, q.weight().clone());
        for w in space.tuples(p) {
            let v = f.project(&q.apply(&g.apply_word(&w)));
            m.add_to_entry(w, &v)?;
        }
        out.insert(m)?;
    }
    Ok(out)
}

