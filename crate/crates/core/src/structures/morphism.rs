use crate::coalgebra::{
    cohomomorphism_to_morphism, conjugate_coderivation, desuspension_exponent, down, intertwining_residual,
    morphism_to_cohomomorphism, phi_sequence_inverse, Cohomomorphism,
};
use crate::error::{input, Error, Result};
use crate::graded::{
    enumerate_partitions, ensure_same, inversion_count, koszul_exponent, sum_degrees, Coeffs, Degree, LinComb,
    PartitionSchema, SpaceRef,
};
use crate::linalg::Matrix;
use crate::multilinear::{MapSequence, MultiMap};
use crate::scalar::Scalar;

use super::lod_infty::LodInftyStructure;

/// A Loday infinity morphism `f = (f_1, f_2, ...)`, `f_p` of weight `(1-p) e1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LodInftyMorphism<S: Scalar> {
    pub source: LodInftyStructure<S>,
    pub target: LodInftyStructure<S>,
    maps: MapSequence<S>,
}

/// How the degree term `V_{|I^1|} + ... + V_{|I^{r-1}|}` of the sign `ω` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaReading {
    /// Degree sums of the argument blocks `I^1, ..., I^{r-1}`.
    BlockSums,
    /// Degrees of the single arguments `v_{|I^1|}, ..., v_{|I^{r-1}|}`.
    Literal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismReport<S: Scalar> {
    /// Verdict of the explicit component equation.
    pub holds: bool,
    /// Verdict of `Q'F = FQ` computed through coalgebra extensions.
    pub holds_coalgebraic: bool,
    pub failing_p: Option<usize>,
    pub failing_tuple: Option<Vec<usize>>,
    pub residual: Option<Coeffs<S>>,
}

impl<S: Scalar> LodInftyMorphism<S> {
    pub fn new(source: LodInftyStructure<S>, target: LodInftyStructure<S>, maps: MapSequence<S>) -> Result<Self> {
        ensure_same(maps.domain(), source.space(), "morphism source")?;
        ensure_same(maps.codomain(), target.space(), "morphism target")?;
        if !maps.base_weight().is_zero() {
            return Err(Error::Weight(format!("morphism maps need base weight 0, got {}", maps.base_weight())));
        }
        Ok(LodInftyMorphism { source, target, maps })
    }

    pub fn from_maps(
        source: LodInftyStructure<S>,
        target: LodInftyStructure<S>,
        maps: Vec<MultiMap<S>>,
    ) -> Result<Self> {
        let mut seq = MapSequence::between(source.space().clone(), target.space().clone(), source.space().zero_degree());
        for m in maps {
            seq.insert(m)?;
        }
        Self::new(source, target, seq)
    }

    pub fn identity(structure: &LodInftyStructure<S>) -> Self {
        let id = MultiMap::identity(structure.space().clone());
        Self::from_maps(structure.clone(), structure.clone(), vec![id]).expect("identity is well formed")
    }

    pub fn maps(&self) -> &MapSequence<S> {
        &self.maps
    }

    pub fn at(&self, p: usize) -> MultiMap<S> {
        self.maps.at(p)
    }

    pub fn cohomomorphism(&self) -> Result<Cohomomorphism<S>> {
        morphism_to_cohomomorphism(&self.maps, &down(self.source.space()), &down(self.target.space()))
    }
}

fn unit<S: Scalar>(i: usize) -> Coeffs<S> {
    LinComb::single(i, S::one())
}

/// Both sides of the component form of `π' ∘ f = f ∘ π` on one basis tuple.
pub fn morphism_sides<S: Scalar>(
    f: &LodInftyMorphism<S>,
    tuple: &[usize],
    reading: OmegaReading,
) -> (Coeffs<S>, Coeffs<S>) {
    let src = f.source.space();
    let n = src.n();
    let e1 = src.e1();
    let p = tuple.len();
    let degs: Vec<Degree> = tuple.iter().map(|&i| src.degree(i).clone()).collect();

    let mut lhs = LinComb::new();
    'blocks: for blocks in enumerate_partitions(PartitionSchema::Blocks { len: p, blocks: None }).iter() {
        let s = blocks.len();
        let Some(pi_s) = f.target.maps().get(s) else { continue };
        let mut factors = Vec::with_capacity(s);
        for b in blocks {
            let args: Vec<usize> = b.iter().map(|&k| tuple[k]).collect();
            match f.maps.get(b.len()).and_then(|m| m.eval_basis(&args)) {
                Some(v) => factors.push(v.clone()),
                None => continue 'blocks,
            }
        }
        let concat: Vec<usize> = blocks.iter().flatten().copied().collect();
        let mut omega = (s * (s - 1) / 2) as i64;
        for (r, b) in blocks.iter().enumerate() {
            omega += ((s - 1 - r) * b.len()) as i64;
        }
        for r in 1..s {
            let prior = match reading {
                OmegaReading::BlockSums => sum_degrees(n, blocks[..r].iter().flatten().map(|&k| &degs[k])),
                OmegaReading::Literal => sum_degrees(n, blocks[..r].iter().map(|b| &degs[b.len() - 1])),
            };
            omega += ((blocks[r].len() as i64 + 1) * &e1).pair(&prior);
        }
        let e = omega + inversion_count(&concat) + koszul_exponent(&degs, &concat);
        lhs.add_scaled(&pi_s.eval(&factors), &S::sign_power(e));
    }

    let mut rhs = LinComb::new();
    for part in enumerate_partitions(PartitionSchema::ThreePart { len: p, j_len: None }).iter() {
        let (i, j, k) = (&part[0], &part[1], &part[2]);
        let Some(pi) = f.source.maps().get(j.len() + 1) else { continue };
        let Some(fm) = f.maps.get(i.len() + k.len()) else { continue };
        let mut pargs: Vec<usize> = j.iter().map(|&x| tuple[x]).collect();
        pargs.push(tuple[k[0]]);
        let Some(inner) = pi.eval_basis(&pargs) else { continue };
        let vi = sum_degrees(n, i.iter().map(|&x| &degs[x]));
        let lambda = ((1 + j.len() as i64) * &e1).pair(&(&vi + &((p as i64 + 1) * &e1)));
        let ji: Vec<usize> = j.iter().chain(i.iter()).copied().collect();
        let ij: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
        let e = lambda + inversion_count(&ji) + koszul_exponent(&degs, &ij);
        let mut args: Vec<Coeffs<S>> = i.iter().map(|&x| unit(tuple[x])).collect();
        args.push(inner.clone());
        args.extend(k[1..].iter().map(|&x| unit(tuple[x])));
        rhs.add_scaled(&fm.eval(&args), &S::sign_power(e));
    }
    (lhs, rhs)
}

/// Checks the morphism equation up to arity `max_p`, both through the explicit
/// component formula and through `Q'F = FQ` on `T(↓V)`.
pub fn check_morphism<S: Scalar>(f: &LodInftyMorphism<S>, max_p: usize) -> Result<MorphismReport<S>> {
    check_morphism_with(f, max_p, OmegaReading::BlockSums)
}

pub fn check_morphism_with<S: Scalar>(
    f: &LodInftyMorphism<S>,
    max_p: usize,
    reading: OmegaReading,
) -> Result<MorphismReport<S>> {
    let q = f.source.codifferential()?;
    let q2 = f.target.codifferential()?;
    let big_f = f.cohomomorphism()?;
    let src = f.source.space();
    let mut report = MorphismReport {
        holds: true,
        holds_coalgebraic: true,
        failing_p: None,
        failing_tuple: None,
        residual: None,
    };
    for p in 1..=max_p {
        for t in src.tuples(p) {
            if report.holds_coalgebraic && !intertwining_residual(&q2, &big_f, &q, &t).is_zero() {
                report.holds_coalgebraic = false;
            }
            if report.holds {
                let (l, r) = morphism_sides(f, &t, reading);
                let res = l.sub(&r);
                if !res.is_zero() {
                    report.holds = false;
                    report.failing_p = Some(p);
                    report.failing_tuple = Some(t.clone());
                    report.residual = Some(res);
                }
            }
        }
    }
    Ok(report)
}

/// `(π' ∘ f)_p` evaluated coalgebraically and brought back to `V`:
/// `↑ pr Q'F ↓^{⊗p}` on a tuple.
pub fn coalgebraic_left_side<S: Scalar>(f: &LodInftyMorphism<S>, tuple: &[usize]) -> Result<Coeffs<S>> {
    let q2 = f.target.codifferential()?;
    let big_f = f.cohomomorphism()?;
    let v = q2.project(&big_f.apply_word(tuple));
    Ok(v.scaled(&S::sign_power(desuspension_exponent(f.source.space(), tuple))))
}

/// `(f ∘ π)_p` evaluated coalgebraically and brought back to `V`.
pub fn coalgebraic_right_side<S: Scalar>(f: &LodInftyMorphism<S>, tuple: &[usize]) -> Result<Coeffs<S>> {
    let q = f.source.codifferential()?;
    let big_f = f.cohomomorphism()?;
    let v = big_f.project(&q.apply_word(tuple));
    Ok(v.scaled(&S::sign_power(desuspension_exponent(f.source.space(), tuple))))
}

/// The inverse of a morphism with bijective `f_1`, certified on words of
/// length `<= max_p`.
pub fn invert_morphism<S: Scalar>(f: &LodInftyMorphism<S>, max_p: usize) -> Result<LodInftyMorphism<S>> {
    let big_f = f.cohomomorphism()?;
    let big_g = big_f.inverse(max_p)?;
    if !big_f.after(&big_g, max_p)?.is_identity_up_to(max_p) || !big_g.after(&big_f, max_p)?.is_identity_up_to(max_p)
    {
        return Err(Error::Internal("inverse cohomomorphism does not invert".into()));
    }
    let maps = cohomomorphism_to_morphism(&big_g, f.target.space(), f.source.space())?;
    LodInftyMorphism::new(f.target.clone(), f.source.clone(), maps)
}

/// `g ∘ f`, truncated at arity `max_p`.
pub fn compose<S: Scalar>(
    g: &LodInftyMorphism<S>,
    f: &LodInftyMorphism<S>,
    max_p: usize,
) -> Result<LodInftyMorphism<S>> {
    ensure_same(f.target.space(), g.source.space(), "morphism composition")?;
    let gf = g.cohomomorphism()?.after(&f.cohomomorphism()?, max_p)?;
    let maps = cohomomorphism_to_morphism(&gf, f.source.space(), g.target.space())?;
    LodInftyMorphism::new(f.source.clone(), g.target.clone(), maps)
}

/// `f ∘ π ∘ f^{-1}` for `f` with bijective linear part, together with `f`
/// as a morphism from `π` to the result.
pub fn transport<S: Scalar>(
    pi: &LodInftyStructure<S>,
    f: &MapSequence<S>,
    max_arity: usize,
) -> Result<(LodInftyStructure<S>, LodInftyMorphism<S>)> {
    ensure_same(f.domain(), pi.space(), "transport")?;
    let target_space = f.codomain().clone();
    let dsrc = down(pi.space());
    let ddst = down(&target_space);
    let big_f = morphism_to_cohomomorphism(f, &dsrc, &ddst)?;
    let big_g = big_f.inverse(max_arity)?;
    let q = conjugate_coderivation(&big_f, &pi.codifferential()?, &big_g, max_arity)?;
    let seq = phi_sequence_inverse(&q, &target_space)?;
    let target = LodInftyStructure::new(seq, max_arity)?;
    let source = pi.with_max_arity(max_arity.max(pi.max_arity()))?;
    let morphism = LodInftyMorphism::new(source, target.clone(), f.clone())?;
    Ok((target, morphism))
}

/// Conjugation by a sequence whose first map is the identity.
pub fn conjugate<S: Scalar>(
    pi: &LodInftyStructure<S>,
    f: &MapSequence<S>,
    max_arity: usize,
) -> Result<LodInftyStructure<S>> {
    if f.at(1) != MultiMap::identity(pi.space().clone()) {
        return input("conjugation needs f_1 = id");
    }
    Ok(transport(pi, f, max_arity)?.0)
}

/// Matrix of a unary map restricted to `V^α -> V'^{α+w}`.
pub(crate) fn block_matrix<S: Scalar>(m: &MultiMap<S>, from: &[usize], to: &[usize]) -> Matrix<S> {
    let mut mat = Matrix::zeros(to.len(), from.len());
    for (c, &j) in from.iter().enumerate() {
        if let Some(v) = m.eval_basis(&[j]) {
            for (r, &i) in to.iter().enumerate() {
                if let Some(x) = v.get(&i) {
                    mat.set(r, c, x.clone());
                }
            }
        }
    }
    mat
}

/// Per-degree cycles and boundaries of a differential `d` of weight `e1`.
pub struct DegreeCohomology<S: Scalar> {
    pub degree: Degree,
    pub indices: Vec<usize>,
    pub cycles: Vec<Vec<S>>,
    pub boundaries: Vec<Vec<S>>,
}

impl<S: Scalar> DegreeCohomology<S> {
    pub fn dim(&self) -> usize {
        self.cycles.len() - Matrix::from_columns(self.indices.len(), &self.boundaries).rank()
    }
}

/// `H(V, d)` degree by degree.
pub fn linear_cohomology<S: Scalar>(space: &SpaceRef, d: &MultiMap<S>) -> Vec<DegreeCohomology<S>> {
    let e1 = space.e1();
    space
        .degrees()
        .into_iter()
        .map(|deg| {
            let idx = space.indices_of_degree(&deg);
            let next = space.indices_of_degree(&(&deg + &e1));
            let prev = space.indices_of_degree(&(&deg - &e1));
            let cycles = block_matrix(d, &idx, &next).kernel();
            let bmat = block_matrix(d, &prev, &idx);
            let boundaries = (0..bmat.cols()).map(|c| bmat.column(c)).collect();
            DegreeCohomology { degree: deg, indices: idx, cycles, boundaries }
        })
        .collect()
}

/// Whether `f_1` induces an isomorphism `H(V, π_1) -> H(V', π'_1)`.
pub fn is_quasi_isomorphism<S: Scalar>(f: &LodInftyMorphism<S>) -> bool {
    let (src, dst) = (f.source.space(), f.target.space());
    let f1 = f.at(1);
    let hs = linear_cohomology(src, &f.source.at(1));
    let ht = linear_cohomology(dst, &f.target.at(1));
    let mut degrees: Vec<Degree> = hs.iter().map(|h| h.degree.clone()).collect();
    degrees.extend(ht.iter().map(|h| h.degree.clone()));
    degrees.sort();
    degrees.dedup();
    for deg in degrees {
        let a = hs.iter().find(|h| h.degree == deg);
        let b = ht.iter().find(|h| h.degree == deg);
        let da = a.map_or(0, |h| h.dim());
        let db = b.map_or(0, |h| h.dim());
        if da != db {
            return false;
        }
        if da == 0 {
            continue;
        }
        let (a, b) = (a.unwrap(), b.unwrap());
        let fm = block_matrix(&f1, &a.indices, &b.indices);
        let mut cols = b.boundaries.clone();
        let base_rank = Matrix::from_columns(b.indices.len(), &cols).rank();
        cols.extend(a.cycles.iter().map(|z| fm.apply(z)));
        let full = Matrix::from_columns(b.indices.len(), &cols).rank();
        if full - base_rank != da {
            return false;
        }
    }
    true
}
