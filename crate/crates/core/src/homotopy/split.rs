use crate::error::{input, Error, Result};
use crate::graded::{Coeffs, Degree, LinComb, SpaceRef};
use crate::linalg::{extend_to_independent, Matrix};
use crate::multilinear::{MapSequence, MultiMap};
use crate::scalar::Scalar;
use crate::structures::{block_matrix, conjugate, LodInftyStructure};

/// Which summand of `V = V_m ⊕ B ⊕ W` a split vector spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// `V_m`, a supplement of `B` in `Z`.
    Harmonic,
    /// `B = im π_1`.
    Boundary,
    /// `W`, a supplement of `Z` in `V`.
    Complement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitVector<S: Scalar> {
    pub part: Part,
    pub degree: Degree,
    pub vector: Coeffs<S>,
    /// Boundary: index of its preimage in `W`. Complement: index of its image.
    pub partner: Option<usize>,
}

/// A basis of `V` adapted to `Z = V_m ⊕ B` and `V = Z ⊕ W`.
///
/// Harmonic vectors come first, then boundaries and complements; inside each
/// block the order follows the leading original basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitComplex<S: Scalar> {
    space: SpaceRef,
    vectors: Vec<SplitVector<S>>,
    expansion: Vec<Coeffs<S>>,
}

impl<S: Scalar> SplitComplex<S> {
    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn vectors(&self) -> &[SplitVector<S>] {
        &self.vectors
    }

    pub fn part_of(&self, k: usize) -> Part {
        self.vectors[k].part
    }

    pub fn of_part(&self, part: Part) -> Vec<&SplitVector<S>> {
        self.vectors.iter().filter(|v| v.part == part).collect()
    }

    pub fn harmonic(&self) -> Vec<&SplitVector<S>> {
        self.of_part(Part::Harmonic)
    }

    pub fn boundaries(&self) -> Vec<&SplitVector<S>> {
        self.of_part(Part::Boundary)
    }

    pub fn complement(&self) -> Vec<&SplitVector<S>> {
        self.of_part(Part::Complement)
    }

    /// `Z = V_m ⊕ B`.
    pub fn cycles(&self) -> Vec<&SplitVector<S>> {
        self.vectors.iter().filter(|v| v.part != Part::Complement).collect()
    }

    pub fn harmonic_dim(&self) -> usize {
        self.harmonic().len()
    }

    /// Coordinates of `v` in the split basis.
    pub fn expand(&self, v: &Coeffs<S>) -> Coeffs<S> {
        let mut out = LinComb::new();
        for (&i, c) in v.iter() {
            out.add_scaled(&self.expansion[i], c);
        }
        out
    }

    /// Coordinates of the original basis vector `e_i`.
    pub fn expansion_of(&self, i: usize) -> &Coeffs<S> {
        &self.expansion[i]
    }
}

/// The homotopy operator `δ` and the projection `P` onto `V_m` along `B ⊕ W`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyData<S: Scalar> {
    pub delta: MultiMap<S>,
    pub projection: MultiMap<S>,
}

impl<S: Scalar> HomotopyData<S> {
    /// `π_1 δ + δ π_1 = id - P`.
    pub fn is_homotopy(&self, pi1: &MultiMap<S>) -> bool {
        let lhs = pi1
            .compose_unary(&self.delta)
            .and_then(|a| a.add(&self.delta.compose_unary(pi1)?));
        let rhs = MultiMap::identity(pi1.domain().clone()).sub(&self.projection);
        matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
    }
}

fn to_coeffs<S: Scalar>(indices: &[usize], local: &[S]) -> Coeffs<S> {
    indices.iter().zip(local).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c.clone())).collect()
}

fn leading<S: Scalar>(v: &Coeffs<S>) -> usize {
    *v.keys().next().expect("split vectors are nonzero")
}

/// Splits `(V, π_1)` by elimination on the fixed basis order and returns
/// the split basis together with `δ` and `P`.
pub fn split_complex<S: Scalar>(space: &SpaceRef, pi1: &MultiMap<S>) -> Result<(SplitComplex<S>, HomotopyData<S>)> {
    if pi1.arity() != 1 || !pi1.is_endo() {
        return input("π_1 must be a unary endomorphism");
    }
    if !pi1.compose_unary(pi1)?.is_zero() {
        return input("π_1 does not square to zero");
    }
    let q = pi1.weight().clone();
    let mut harmonic = Vec::new();
    let mut pairs = Vec::new();
    for deg in space.degrees() {
        let idx = space.indices_of_degree(&deg);
        let next = space.indices_of_degree(&(&deg + &q));
        let out = block_matrix(pi1, &idx, &next);
        let mut reduced = out.clone();
        for c in reduced.rref() {
            let w = idx[c];
            let b = pi1.eval_basis(&[w]).cloned().unwrap_or_default();
            pairs.push((w, b));
        }
        let cycles = out.kernel();
        let prev = space.indices_of_degree(&(&deg - &q));
        let into = block_matrix(pi1, &prev, &idx);
        let mut bounds: Vec<Vec<S>> = Vec::new();
        let mut r = into.clone();
        for c in r.rref() {
            bounds.push(into.column(c));
        }
        for k in extend_to_independent(idx.len(), &bounds, &cycles) {
            harmonic.push((deg.clone(), to_coeffs(&idx, &cycles[k])));
        }
    }
    harmonic.sort_by_key(|(_, v)| leading(v));
    pairs.sort_by_key(|(w, _)| *w);

    let mut vectors: Vec<SplitVector<S>> = harmonic
        .into_iter()
        .map(|(degree, vector)| SplitVector { part: Part::Harmonic, degree, vector, partner: None })
        .collect();
    let m = vectors.len();
    let mut rest: Vec<(usize, Part, usize)> = Vec::new();
    for (k, (w, b)) in pairs.iter().enumerate() {
        rest.push((*w, Part::Complement, k));
        rest.push((leading(b), Part::Boundary, k));
    }
    rest.sort();
    let mut slot = vec![(0usize, 0usize); pairs.len()];
    for (pos, &(_, part, k)) in rest.iter().enumerate() {
        match part {
            Part::Complement => slot[k].0 = m + pos,
            _ => slot[k].1 = m + pos,
        }
    }
    for &(_, part, k) in &rest {
        let (w, b) = &pairs[k];
        let (vector, degree, partner) = match part {
            Part::Complement => (LinComb::single(*w, S::one()), space.degree(*w).clone(), slot[k].1),
            _ => (b.clone(), space.degree(*w) + &q, slot[k].0),
        };
        vectors.push(SplitVector { part, degree, vector, partner: Some(partner) });
    }

    let dim = space.dim();
    let columns: Vec<Vec<S>> = vectors
        .iter()
        .map(|v| (0..dim).map(|i| v.vector.coeff(&i)).collect())
        .collect();
    let inv = Matrix::from_columns(dim, &columns)
        .inverse()
        .ok_or_else(|| Error::Internal("split basis is not a basis".into()))?;
    let expansion: Vec<Coeffs<S>> = (0..dim).map(|i| to_coeffs(&(0..dim).collect::<Vec<_>>(), &inv.column(i))).collect();
    let split = SplitComplex { space: space.clone(), vectors, expansion };

    let mut delta = MultiMap::zero_endo(space.clone(), 1, -&q);
    let mut projection = MultiMap::zero_endo(space.clone(), 1, space.zero_degree());
    for i in 0..dim {
        let mut d = LinComb::new();
        let mut p = LinComb::new();
        for (&k, c) in split.expansion[i].iter() {
            let sv = &split.vectors[k];
            match sv.part {
                Part::Harmonic => p.add_scaled(&sv.vector, c),
                Part::Boundary => d.add_scaled(&split.vectors[sv.partner.unwrap()].vector, c),
                Part::Complement => {}
            }
        }
        delta.add_to_entry(vec![i], &d)?;
        projection.add_to_entry(vec![i], &p)?;
    }
    let data = HomotopyData { delta, projection };
    if !data.is_homotopy(pi1) {
        return Err(Error::Internal("π_1 δ + δ π_1 ≠ id - P".into()));
    }
    Ok((split, data))
}

/// Evaluates a bilinear or multilinear map on split basis vectors and
/// expands it back over the original basis.
fn from_split_values<S: Scalar>(
    split: &SplitComplex<S>,
    arity: usize,
    weight: Degree,
    value: impl Fn(&[usize]) -> Result<Coeffs<S>>,
) -> Result<MultiMap<S>> {
    let space = split.space();
    let mut cache = std::collections::BTreeMap::new();
    let mut out = MultiMap::zero_endo(space.clone(), arity, weight);
    for t in space.tuples(arity) {
        let mut acc: Vec<(Vec<usize>, S)> = vec![(Vec::new(), S::one())];
        for &i in &t {
            let mut next = Vec::new();
            for (pre, c) in &acc {
                for (&k, x) in split.expansion_of(i).iter() {
                    let mut w = pre.clone();
                    w.push(k);
                    next.push((w, c.clone() * x.clone()));
                }
            }
            acc = next;
        }
        let mut total = LinComb::new();
        for (ks, c) in acc {
            if !cache.contains_key(&ks) {
                let v = value(&ks)?;
                cache.insert(ks.clone(), v);
            }
            total.add_scaled(&cache[&ks], &c);
        }
        out.add_to_entry(t, &total)?;
    }
    Ok(out)
}

/// The binary correction map `f_2` of weight `-e1`, defined casewise on
/// `B × Z`, `B × W`, `Z × B`, `W × B` and elsewhere.
pub fn build_f2<S: Scalar>(
    pi: &LodInftyStructure<S>,
    split: &SplitComplex<S>,
    hdata: &HomotopyData<S>,
) -> Result<MultiMap<S>> {
    let pi2 = pi.at(2);
    let vecs = split.vectors();
    let ev = |a: &Coeffs<S>, b: &Coeffs<S>| pi2.eval(&[a.clone(), b.clone()]);
    let dp = |v: Coeffs<S>| hdata.delta.eval(&[v]);
    let pp = |v: Coeffs<S>| hdata.projection.eval(&[v]);
    let half = S::half();
    let value = |ks: &[usize]| -> Result<Coeffs<S>> {
        let (a, b) = (&vecs[ks[0]], &vecs[ks[1]]);
        let mut out = dp(ev(&a.vector, &b.vector));
        let sign = S::sign_power(a.degree.first());
        let preimage = |v: &SplitVector<S>| &vecs[v.partner.unwrap()].vector;
        let first = match (a.part, b.part) {
            (Part::Boundary, Part::Complement) => Some(pp(ev(preimage(a), &b.vector)).scaled(&half)),
            (Part::Boundary, _) => Some(pp(ev(preimage(a), &b.vector))),
            _ => None,
        };
        let second = match (a.part, b.part) {
            (Part::Complement, Part::Boundary) => Some(pp(ev(&a.vector, preimage(b))).scaled(&(sign * half.clone()))),
            (_, Part::Boundary) => Some(pp(ev(&a.vector, preimage(b))).scaled(&sign)),
            _ => None,
        };
        match (first, second) {
            (Some(x), Some(y)) => {
                if x != y {
                    return Err(Error::Internal("f_2 is not well defined on B × B".into()));
                }
                out.add_assign(&x);
            }
            (Some(x), None) | (None, Some(x)) => out.add_assign(&x),
            (None, None) => {}
        }
        Ok(out)
    };
    let weight = -&split.space().e1();
    from_split_values(split, 2, weight, value)
}

/// `f_k = δ π_k` plus projected corrections on arguments in `B`: each
/// boundary argument is traded for its preimage, with sign
/// `(-1)^{k + <e1, earlier arguments>}` and weight one over the number of
/// arguments outside `V_m`. For `k = 2` this is [`build_f2`].
pub fn correction_candidate<S: Scalar>(
    pi_k: &MultiMap<S>,
    split: &SplitComplex<S>,
    hdata: &HomotopyData<S>,
) -> Result<MultiMap<S>> {
    let k = pi_k.arity();
    let vecs = split.vectors();
    let space = split.space();
    let value = |ks: &[usize]| -> Result<Coeffs<S>> {
        let args: Vec<Coeffs<S>> = ks.iter().map(|&i| vecs[i].vector.clone()).collect();
        let mut out = hdata.delta.eval(&[pi_k.eval(&args)]);
        let outside = ks.iter().filter(|&&i| vecs[i].part != Part::Harmonic).count();
        let mut shift = space.zero_degree();
        for (pos, &i) in ks.iter().enumerate() {
            if vecs[i].part == Part::Boundary {
                let mut swapped = args.clone();
                swapped[pos] = vecs[vecs[i].partner.unwrap()].vector.clone();
                let c = S::sign_power(shift.first() + k as i64) / S::from_int(outside as i64);
                out.add_scaled(&hdata.projection.eval(&[pi_k.eval(&swapped)]), &c);
            }
            shift += &vecs[i].degree;
        }
        Ok(out)
    };
    let weight = (1 - k as i64) * &space.e1();
    from_split_values(split, k, weight, value)
}

/// Conjugates `π` by `(id, f_2)`.
pub fn transfer_step<S: Scalar>(pi: &LodInftyStructure<S>, f2: &MultiMap<S>) -> Result<LodInftyStructure<S>> {
    let space = pi.space().clone();
    let seq = MapSequence::from_maps(space.clone(), space.zero_degree(), vec![MultiMap::identity(space), f2.clone()])?;
    conjugate(pi, &seq, pi.max_arity().max(2))
}

/// `π_2' = -π_1 f_2 + π_2 - f_2(π_1 ·, ·) - (-1)^{<e1, v_1>} f_2(·, π_1 ·)` on
/// every pair of basis vectors.
pub fn transfer_formula_holds<S: Scalar>(
    pi: &LodInftyStructure<S>,
    f2: &MultiMap<S>,
    result: &LodInftyStructure<S>,
) -> bool {
    let space = pi.space();
    let (pi1, pi2, new2) = (pi.at(1), pi.at(2), result.at(2));
    let unit = |i: usize| LinComb::single(i, S::one());
    for t in space.tuples(2) {
        let (a, b) = (unit(t[0]), unit(t[1]));
        let mut rhs = pi2.eval(&[a.clone(), b.clone()]);
        rhs.add_scaled(&pi1.eval(&[f2.eval(&[a.clone(), b.clone()])]), &-S::one());
        rhs.add_scaled(&f2.eval(&[pi1.eval(&[a.clone()]), b.clone()]), &-S::one());
        let s = -S::sign_power(space.degree(t[0]).first());
        rhs.add_scaled(&f2.eval(&[a.clone(), pi1.eval(&[b.clone()])]), &s);
        if new2.eval(&[a, b]) != rhs {
            return false;
        }
    }
    true
}
