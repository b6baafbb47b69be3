use std::collections::HashMap;
use std::sync::Arc;

use crate::coalgebra::{down, sigma, sigma_inverse, Coderivation};
use crate::error::{input, Error, Result};
use crate::graded::{BasisElement, Coeffs, GradedSpace, LinComb, SpaceRef};
use crate::linalg::Matrix;
use crate::multilinear::{MapSequence, MultiMap};
use crate::scalar::Scalar;
use crate::structures::{
    check_morphism, compose, invert_morphism, is_quasi_isomorphism, linear_cohomology, transport, LodInftyMorphism,
    LodInftyStructure,
};

use super::split::{build_f2, correction_candidate, split_complex, Part, SplitComplex};

/// How the correction map of one arity was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepMethod {
    /// The map was already split; no correction.
    Unchanged,
    /// The closed formula (`δ π_k` with projected corrections).
    Formula,
    /// The formula missed the target and a linear solve was used.
    LinearSolve,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalModel<S: Scalar> {
    /// `(V_m, π^m)` with `π_1^m = 0`.
    pub minimal: LodInftyStructure<S>,
    /// `(V_c, π_1^c)` with trivial cohomology.
    pub contractible: LodInftyStructure<S>,
    /// `π ≅ π^m ⊕ π^c`.
    pub iso: LodInftyMorphism<S>,
    pub split: SplitComplex<S>,
    pub steps: Vec<(usize, StepMethod)>,
    pub max_arity: usize,
}

impl<S: Scalar> MinimalModel<S> {
    pub fn sum(&self) -> &LodInftyStructure<S> {
        &self.iso.target
    }

    /// The strict inclusion `V_m -> V_m ⊕ V_c`.
    pub fn inclusion(&self) -> Result<LodInftyMorphism<S>> {
        let (m, total) = (self.minimal.space(), self.sum().space());
        let mut map = MultiMap::zero(m.clone(), total.clone(), 1, m.zero_degree());
        for i in 0..m.dim() {
            map.add_to_entry(vec![i], &LinComb::single(i, S::one()))?;
        }
        LodInftyMorphism::from_maps(self.minimal.clone(), self.sum().clone(), vec![map])
    }

    /// The strict projection `V_m ⊕ V_c -> V_m`.
    pub fn projection(&self) -> Result<LodInftyMorphism<S>> {
        let (m, total) = (self.minimal.space(), self.sum().space());
        let mut map = MultiMap::zero(total.clone(), m.clone(), 1, m.zero_degree());
        for i in 0..m.dim() {
            map.add_to_entry(vec![i], &LinComb::single(i, S::one()))?;
        }
        LodInftyMorphism::from_maps(self.sum().clone(), self.minimal.clone(), vec![map])
    }

    /// `𝔭 ∘ h`, a quasi-isomorphism from `π` to its minimal part.
    pub fn to_minimal(&self) -> Result<LodInftyMorphism<S>> {
        compose(&self.projection()?, &self.iso, self.max_arity)
    }
}

fn fresh_name(taken: &mut Vec<String>, prefix: &str) -> String {
    let mut k = 1;
    loop {
        let name = format!("{prefix}{k}");
        if !taken.contains(&name) {
            taken.push(name.clone());
            return name;
        }
        k += 1;
    }
}

/// Spaces spanned by the split basis: `V_m` and `V_c = B ⊕ W`. A split
/// vector that is a basis vector of `V` keeps its name.
fn split_spaces<S: Scalar>(split: &SplitComplex<S>) -> Result<(SpaceRef, SpaceRef)> {
    let space = split.space();
    let mut taken: Vec<String> = (0..space.dim()).map(|i| space.name(i).to_string()).collect();
    let mut m = Vec::new();
    let mut c = Vec::new();
    for v in split.vectors() {
        let single = v.vector.len() == 1 && v.vector.iter().next().is_some_and(|(_, x)| x.is_one());
        let name = if single {
            space.name(*v.vector.keys().next().unwrap()).to_string()
        } else {
            let prefix = match v.part {
                Part::Harmonic => "m",
                Part::Boundary => "b",
                Part::Complement => "w",
            };
            fresh_name(&mut taken, prefix)
        };
        let elem = BasisElement { name, degree: v.degree.clone() };
        if v.part == Part::Harmonic { m.push(elem) } else { c.push(elem) }
    }
    Ok((Arc::new(GradedSpace::new(space.n(), m)?), Arc::new(GradedSpace::new(space.n(), c)?)))
}

fn identity_plus<S: Scalar>(space: &SpaceRef, f: MultiMap<S>) -> Result<MapSequence<S>> {
    MapSequence::from_maps(space.clone(), space.zero_degree(), vec![MultiMap::identity(space.clone()), f])
}

/// `P π_k` on tuples inside `V_m = span(e_0..e_{m-1})`, zero elsewhere.
fn split_target<S: Scalar>(pi_k: &MultiMap<S>, m: usize) -> Result<MultiMap<S>> {
    let mut out = MultiMap::zero_endo(pi_k.domain().clone(), pi_k.arity(), pi_k.weight().clone());
    for (t, v) in pi_k.entries() {
        if t.iter().all(|&i| i < m) {
            let proj: Coeffs<S> = v.iter().filter(|(&i, _)| i < m).map(|(&i, c)| (i, c.clone())).collect();
            out.add_to_entry(t.clone(), &proj)?;
        }
    }
    Ok(out)
}

/// Solves `F ∘ Q_1 - Q_1 ∘ F = σ^{-1}(target) - Q_k` for the arity-`k`
/// corestriction `F` on `T(↓V)` and returns `σ(F)`. Conjugating by
/// `(id, σ(F))` then turns `π_k` into `target`.
pub fn solve_correction<S: Scalar>(pi: &LodInftyStructure<S>, k: usize, target: &MultiMap<S>) -> Result<MultiMap<S>> {
    let space = pi.space();
    let dsp = down(space);
    let q = pi.codifferential()?;
    let mut q1 = Coderivation::new(dsp.clone(), q.weight().clone());
    if let Some(m) = q.corestriction(1) {
        q1.insert(m.clone())?;
    }
    let mut rhs = sigma_inverse(target, &dsp, &dsp);
    if let Some(m) = q.corestriction(k) {
        rhs = rhs.sub(m)?;
    }

    // Unknowns (t, j): F(t) = e_j with weight zero on ↓V.
    let mut unknowns: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut unknown_index: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    for t in dsp.tuples(k) {
        let deg = crate::coalgebra::word_degree(&dsp, &t);
        for j in dsp.indices_of_degree(&deg) {
            unknown_index.insert((t.clone(), j), unknowns.len());
            unknowns.push((t.clone(), j));
        }
    }
    // Rows (t', j'); columns are sparse.
    let mut rows: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let row_of = |key: (Vec<usize>, usize), rows: &mut HashMap<_, _>| -> usize {
        let n = rows.len();
        *rows.entry(key).or_insert(n)
    };
    let mut columns: Vec<Vec<(usize, S)>> = vec![Vec::new(); unknowns.len()];
    for t2 in dsp.tuples(k) {
        for (t, c) in q1.apply_word(&t2).iter() {
            for j in 0..dsp.dim() {
                if let Some(&u) = unknown_index.get(&(t.clone(), j)) {
                    let r = row_of((t2.clone(), j), &mut rows);
                    columns[u].push((r, c.clone()));
                }
            }
        }
    }
    for (u, (t, j)) in unknowns.iter().enumerate() {
        if let Some(v) = q1.corestriction(1).and_then(|m| m.eval_basis(&[*j])) {
            for (&j2, c) in v.iter() {
                let r = row_of((t.clone(), j2), &mut rows);
                columns[u].push((r, -c.clone()));
            }
        }
    }
    let mut b: Vec<S> = vec![S::zero(); rows.len()];
    for (t, v) in rhs.entries() {
        for (&j, c) in v.iter() {
            let r = row_of((t.clone(), j), &mut rows);
            if r >= b.len() {
                b.resize(r + 1, S::zero());
            }
            b[r] = b[r].clone() + c.clone();
        }
    }

    // Independent blocks: connected components of the incidence graph.
    let nrows = b.len();
    let mut parent: Vec<usize> = (0..nrows + unknowns.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for (u, col) in columns.iter().enumerate() {
        for (r, c) in col {
            if !c.is_zero() {
                let (a, bb) = (find(&mut parent, nrows + u), find(&mut parent, *r));
                parent[a] = bb;
            }
        }
    }
    let mut solution: Vec<S> = vec![S::zero(); unknowns.len()];
    let mut blocks: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for r in 0..nrows {
        let root = find(&mut parent, r);
        blocks.entry(root).or_default().0.push(r);
    }
    for u in 0..unknowns.len() {
        let root = find(&mut parent, nrows + u);
        blocks.entry(root).or_default().1.push(u);
    }
    for (rs, us) in blocks.values() {
        if rs.iter().all(|&r| b[r].is_zero()) {
            continue;
        }
        let local: HashMap<usize, usize> = rs.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut mat: Matrix<S> = Matrix::zeros(rs.len(), us.len());
        for (c, &u) in us.iter().enumerate() {
            for (r, x) in &columns[u] {
                let i = local[r];
                let v = mat.get(i, c).clone() + x.clone();
                mat.set(i, c, v);
            }
        }
        let rhs_local: Vec<S> = rs.iter().map(|&r| b[r].clone()).collect();
        let x = mat
            .solve(&rhs_local)
            .ok_or_else(|| Error::Internal(format!("no correction map splits arity {k}")))?;
        for (c, &u) in us.iter().enumerate() {
            solution[u] = x[c].clone();
        }
    }
    let mut big_f = MultiMap::zero_endo(dsp.clone(), k, dsp.zero_degree());
    for (u, (t, j)) in unknowns.iter().enumerate() {
        if !solution[u].is_zero() {
            big_f.add_to_entry(t.clone(), &LinComb::single(*j, solution[u].clone()))?;
        }
    }
    Ok(sigma(&big_f, space, space))
}

/// Restriction of a split structure to `V_m` (the first `m` indices) and
/// of its differential to `V_c`.
fn separate<S: Scalar>(
    pi: &LodInftyStructure<S>,
    vm: &SpaceRef,
    vc: &SpaceRef,
    max_arity: usize,
) -> Result<(LodInftyStructure<S>, LodInftyStructure<S>)> {
    let m = vm.dim();
    let base = pi.maps().base_weight().clone();
    let mut minimal = MapSequence::new(vm.clone(), base.clone());
    let mut contractible = MapSequence::new(vc.clone(), base.clone());
    for (p, map) in pi.maps().maps() {
        let mut a = MultiMap::zero_endo(vm.clone(), p, map.weight().clone());
        let mut c = MultiMap::zero_endo(vc.clone(), p, map.weight().clone());
        for (t, v) in map.entries() {
            if t.iter().all(|&i| i < m) && v.keys().all(|&i| i < m) {
                a.add_to_entry(t.clone(), v)?;
            } else if p == 1 && t[0] >= m && v.keys().all(|&i| i >= m) {
                c.add_to_entry(vec![t[0] - m], &v.map_keys(|&i| i - m))?;
            } else {
                return Err(Error::Internal(format!("arity {p} is not split on {}", map.describe_tuple(t))));
            }
        }
        minimal.insert(a)?;
        contractible.insert(c)?;
    }
    Ok((LodInftyStructure::new(minimal, max_arity)?, LodInftyStructure::new(contractible, max_arity)?))
}

/// Decomposes `π` into a minimal and a contractible part, certified up to
/// arity `n`.
pub fn minimal_model<S: Scalar>(pi: &LodInftyStructure<S>, n: usize) -> Result<MinimalModel<S>> {
    if n < 1 {
        return input("minimal model needs max arity at least 1");
    }
    let pi = pi.with_max_arity(n)?;
    if !pi.check().holds {
        return input("not a Loday infinity structure");
    }
    let space = pi.space().clone();
    let (split, _) = split_complex(&space, &pi.at(1))?;
    let (vm, vc) = split_spaces(&split)?;
    let total: SpaceRef = Arc::new(vm.direct_sum(&vc)?);
    let m = vm.dim();

    let mut change = MultiMap::zero(space.clone(), total.clone(), 1, space.zero_degree());
    for i in 0..space.dim() {
        change.add_to_entry(vec![i], split.expansion_of(i))?;
    }
    let mut seq = MapSequence::between(space.clone(), total.clone(), space.zero_degree());
    seq.insert(change)?;
    let (mut current, mut iso) = transport(&pi, &seq, n)?;

    let mut steps = Vec::new();
    for k in 2..=n {
        let target = split_target(&current.at(k), m)?;
        if current.at(k) == target {
            steps.push((k, StepMethod::Unchanged));
            continue;
        }
        let (sp, hd) = split_complex(&total, &current.at(1))?;
        let candidate =
            if k == 2 { build_f2(&current, &sp, &hd)? } else { correction_candidate(&current.at(k), &sp, &hd)? };
        let (mut next, mut step) = transport(&current, &identity_plus(&total, candidate)?, n)?;
        let mut method = StepMethod::Formula;
        if next.at(k) != target {
            let f = solve_correction(&current, k, &target)?;
            (next, step) = transport(&current, &identity_plus(&total, f)?, n)?;
            method = StepMethod::LinearSolve;
            if next.at(k) != target {
                return Err(Error::Internal(format!("arity {k} did not split")));
            }
        }
        steps.push((k, method));
        iso = compose(&step, &iso, n)?;
        current = next;
    }

    let (minimal, contractible) = separate(&current, &vm, &vc, n)?;
    let sum = minimal.direct_sum(&contractible)?;
    if sum.maps() != current.maps() {
        return Err(Error::Internal("split structure differs from the direct sum".into()));
    }
    let iso = LodInftyMorphism::new(pi, sum, iso.maps().clone())?;
    Ok(MinimalModel { minimal, contractible, iso, split, steps, max_arity: n })
}

/// `g = h^{-1} ∘ 𝔦 ∘ (f^m)^{-1} ∘ 𝔭 ∘ h'` for a quasi-isomorphism `f`,
/// certified up to arity `n`.
pub fn quasi_inverse<S: Scalar>(f: &LodInftyMorphism<S>, n: usize) -> Result<LodInftyMorphism<S>> {
    if !is_quasi_isomorphism(f) {
        return Err(Error::NotQuasiIsomorphism("f_1 does not induce an isomorphism in cohomology".into()));
    }
    let src = minimal_model(&f.source, n)?;
    let dst = minimal_model(&f.target, n)?;
    let h_inv = invert_morphism(&src.iso, n)?;
    let h_i = compose(&h_inv, &src.inclusion()?, n)?;
    let h_p = compose(&dst.projection()?, &dst.iso, n)?;
    let f = LodInftyMorphism::new(src.iso.source.clone(), dst.iso.source.clone(), f.maps().truncated(n))?;
    let fm = compose(&h_p, &compose(&f, &h_i, n)?, n)?;
    let fm_inv = invert_morphism(&fm, n)?;
    let g = compose(&h_i, &compose(&fm_inv, &h_p, n)?, n)?;
    if !check_morphism(&g, n)?.holds {
        return Err(Error::Internal("quasi-inverse fails the morphism equation".into()));
    }
    if !inverts_on_cohomology(&f, &g) {
        return Err(Error::Internal("quasi-inverse does not invert f in cohomology".into()));
    }
    Ok(g)
}

/// Whether `g_1 f_1` induces the identity on `H(V, π_1)`.
pub fn inverts_on_cohomology<S: Scalar>(f: &LodInftyMorphism<S>, g: &LodInftyMorphism<S>) -> bool {
    let Ok(gf) = g.at(1).compose_unary(&f.at(1)) else { return false };
    for h in linear_cohomology(f.source.space(), &f.source.at(1)) {
        let bound_rank = Matrix::from_columns(h.indices.len(), &h.boundaries).rank();
        for z in &h.cycles {
            let zc: Coeffs<S> = h.indices.iter().zip(z).map(|(&i, c)| (i, c.clone())).collect();
            let diff = gf.eval(&[zc.clone()]).sub(&zc);
            let local: Vec<S> = h.indices.iter().map(|i| diff.coeff(i)).collect();
            if diff.keys().any(|i| !h.indices.contains(i)) {
                return false;
            }
            let mut cols = h.boundaries.clone();
            cols.push(local);
            if Matrix::from_columns(h.indices.len(), &cols).rank() != bound_rank {
                return false;
            }
        }
    }
    true
}
