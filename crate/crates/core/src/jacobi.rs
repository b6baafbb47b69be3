//! The Grabowski-Marmo bracket on `α`-antisymmetric operators of a graded
//! commutative algebra, and graded Jacobi and Poisson structures.

use std::sync::Arc;

use crate::error::{input, Error, Result};
use crate::graded::{
    enumerate_partitions, ensure_same, inversion_count, koszul_exponent, same_space, Coeffs, Degree, GradedSpace,
    LinComb, PartitionSchema, SpaceRef,
};
use crate::multilinear::{is_graded_antisymmetric, stem_bracket, Cochain, DegreeMinusOneElement, MultiMap};
use crate::scalar::Scalar;

/// An associative graded commutative unital algebra with a fixed weight `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<S: Scalar> {
    product: MultiMap<S>,
    unit: usize,
    alpha: Degree,
}

impl<S: Scalar> GradedAlgebra<S> {
    pub fn new(product: MultiMap<S>, unit: usize, alpha: Degree) -> Result<Self> {
        let space = product.domain().clone();
        if product.arity() != 2 || !product.is_endo() || !product.weight().is_zero() {
            return input("the product must be a weight-zero bilinear endomorphism");
        }
        if alpha.rank() != space.n() {
            return input("α has the wrong grading rank");
        }
        if unit >= space.dim() || !space.degree(unit).is_zero() {
            return input("the unit must be a basis vector of degree zero");
        }
        let alg = GradedAlgebra { product, unit, alpha };
        let e = |i: usize| -> Coeffs<S> { LinComb::single(i, S::one()) };
        for i in 0..space.dim() {
            if alg.mul(&e(unit), &e(i)) != e(i) || alg.mul(&e(i), &e(unit)) != e(i) {
                return input(format!("{} is not a unit for {}", space.name(unit), space.name(i)));
            }
            for j in 0..space.dim() {
                let sign = S::sign_power(space.degree(i).pair(space.degree(j)));
                if alg.mul(&e(i), &e(j)) != alg.mul(&e(j), &e(i)).scaled(&sign) {
                    return input(format!("not graded commutative on ({}, {})", space.name(i), space.name(j)));
                }
                for k in 0..space.dim() {
                    let l = alg.mul(&alg.mul(&e(i), &e(j)), &e(k));
                    let r = alg.mul(&e(i), &alg.mul(&e(j), &e(k)));
                    if l != r {
                        return input(format!(
                            "not associative on ({}, {}, {})",
                            space.name(i),
                            space.name(j),
                            space.name(k)
                        ));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn space(&self) -> &SpaceRef {
        self.product.domain()
    }

    pub fn product(&self) -> &MultiMap<S> {
        &self.product
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn alpha(&self) -> &Degree {
        &self.alpha
    }

    pub fn mul(&self, u: &Coeffs<S>, v: &Coeffs<S>) -> Coeffs<S> {
        self.product.eval(&[u.clone(), v.clone()])
    }

    /// The same algebra with another weight `α`.
    pub fn with_alpha(&self, alpha: Degree) -> Result<Self> {
        Self::new(self.product.clone(), self.unit, alpha)
    }

    /// `↓A` with `(↓A)^γ = A^{γ+α}`.
    pub fn shifted_space(&self) -> SpaceRef {
        Arc::new(self.space().shifted_down(&self.alpha))
    }
}

/// The dual numbers `Q[ε]/(ε²)`, both basis vectors of degree zero.
pub fn dual_numbers<S: Scalar>(alpha: Degree) -> Result<GradedAlgebra<S>> {
    let n = alpha.rank();
    let zero = vec![0i64; n];
    let v = GradedSpace::from_pairs(n, &[("1", &zero), ("eps", &zero)])?;
    let product = MultiMap::from_named(
        v.clone(),
        v,
        2,
        Degree::zero(n),
        &[
            (&["1", "1"], &[(S::one(), "1")]),
            (&["1", "eps"], &[(S::one(), "eps")]),
            (&["eps", "1"], &[(S::one(), "eps")]),
        ],
    )?;
    GradedAlgebra::new(product, 0, alpha)
}

/// The exterior algebra on odd generators `θ_1..θ_k` of degree `e1`.
pub fn exterior_algebra<S: Scalar>(generators: usize, alpha: Degree) -> Result<GradedAlgebra<S>> {
    let n = alpha.rank();
    let e1 = Degree::e1(n);
    let subsets: Vec<u32> = {
        let mut s: Vec<u32> = (0..1u32 << generators).collect();
        s.sort_by_key(|m| (m.count_ones(), *m));
        s
    };
    let name = |m: u32| -> String {
        if m == 0 {
            return "1".into();
        }
        (0..generators).filter(|g| m >> g & 1 == 1).map(|g| format!("t{}", g + 1)).collect::<Vec<_>>().join("")
    };
    let basis = subsets
        .iter()
        .map(|&m| crate::graded::BasisElement { name: name(m), degree: (m.count_ones() as i64) * &e1 })
        .collect();
    let space: SpaceRef = Arc::new(GradedSpace::new(n, basis)?);
    let index = |m: u32| subsets.iter().position(|&x| x == m).unwrap();
    let mut product = MultiMap::zero_endo(space.clone(), 2, Degree::zero(n));
    for &a in &subsets {
        for &b in &subsets {
            if a & b != 0 {
                continue;
            }
            // Sign of merging the two increasing words.
            let mut swaps = 0;
            for g in 0..generators {
                if b >> g & 1 == 1 {
                    swaps += (a >> (g + 1)).count_ones();
                }
            }
            let sign = S::sign_power(swaps as i64);
            product.add_to_entry(vec![index(a), index(b)], &LinComb::single(index(a | b), sign))?;
        }
    }
    GradedAlgebra::new(product, index(0), alpha)
}

/// An `α`-antisymmetric operator of bidegree `(A + α a, a)`: an element of
/// the algebra (`a = -1`) or an `(a+1)`-linear map of weight `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaAntisymOp<S: Scalar> {
    alpha: Degree,
    cochain: Cochain<S>,
}

impl<S: Scalar> AlphaAntisymOp<S> {
    pub fn new(alpha: Degree, cochain: Cochain<S>) -> Result<Self> {
        if alpha.rank() != cochain.space().n() {
            return input("α has the wrong grading rank");
        }
        if let Cochain::Map(m) = &cochain {
            if !m.is_endo() {
                return input("operators map the algebra to itself");
            }
        }
        let op = AlphaAntisymOp { alpha, cochain };
        if !op.is_antisymmetric() {
            return input("operator is not α-antisymmetric");
        }
        Ok(op)
    }

    pub fn element(alpha: Degree, space: SpaceRef, degree: Degree, value: Coeffs<S>) -> Result<Self> {
        Self::new(alpha, Cochain::Element(DegreeMinusOneElement::new(space, degree, value)?))
    }

    pub fn map(alpha: Degree, m: MultiMap<S>) -> Result<Self> {
        Self::new(alpha, Cochain::Map(m))
    }

    pub fn cochain(&self) -> &Cochain<S> {
        &self.cochain
    }

    pub fn alpha(&self) -> &Degree {
        &self.alpha
    }

    pub fn space(&self) -> &SpaceRef {
        self.cochain.space()
    }

    pub fn arity_index(&self) -> i64 {
        self.cochain.arity_index()
    }

    /// The weight `A`.
    pub fn weight(&self) -> &Degree {
        self.cochain.weight()
    }

    /// `(A + α a, a)`.
    pub fn bidegree(&self) -> (Degree, i64) {
        let a = self.arity_index();
        (self.weight() + &(a * &self.alpha), a)
    }

    pub fn is_zero(&self) -> bool {
        self.cochain.is_zero()
    }

    /// Swapping adjacent arguments `u, v` multiplies by `-(-1)^{<u+α, v+α>}`.
    pub fn is_antisymmetric(&self) -> bool {
        match self.tilde() {
            Ok(Cochain::Map(m)) => is_graded_antisymmetric(&m),
            Ok(_) => true,
            Err(_) => false,
        }
    }

    /// `~A` on `↓A`: the same table, read with degrees shifted by `-α`.
    pub fn tilde(&self) -> Result<Cochain<S>> {
        let down: SpaceRef = Arc::new(self.space().shifted_down(&self.alpha));
        shift_cochain(&self.cochain, &down, &self.alpha)
    }

    /// Inverse of [`tilde`](Self::tilde).
    pub fn untilde(alpha: &Degree, space: &SpaceRef, c: &Cochain<S>) -> Result<Self> {
        let cochain = shift_cochain(c, space, &-alpha)?;
        Ok(AlphaAntisymOp { alpha: alpha.clone(), cochain })
    }

    fn unchecked(alpha: Degree, cochain: Cochain<S>) -> Self {
        AlphaAntisymOp { alpha, cochain }
    }

    /// `A(v, ...)`: `v` fills the first slot.
    pub fn insert_first(&self, v: &Coeffs<S>, v_degree: &Degree) -> Result<Self> {
        let Cochain::Map(m) = &self.cochain else {
            return input("cannot insert into an element");
        };
        let space = m.domain().clone();
        let weight = m.weight() + v_degree;
        let cochain = if m.arity() == 1 {
            Cochain::Element(DegreeMinusOneElement::new(space, weight, m.eval(std::slice::from_ref(v)))?)
        } else {
            let mut out = MultiMap::zero_endo(space, m.arity() - 1, weight);
            for (t, val) in m.entries() {
                if let Some(c) = v.get(&t[0]) {
                    out.add_to_entry(t[1..].to_vec(), &val.scaled(c))?;
                }
            }
            Cochain::Map(out)
        };
        Ok(Self::unchecked(self.alpha.clone(), cochain))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::unchecked(self.alpha.clone(), self.cochain.add(&other.cochain)?))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::unchecked(self.alpha.clone(), self.cochain.scale(c))
    }
}

/// The same table over `space`, with the weight moved by `shift` per arity
/// index.
fn shift_cochain<S: Scalar>(c: &Cochain<S>, space: &SpaceRef, shift: &Degree) -> Result<Cochain<S>> {
    Ok(match c {
        Cochain::Null { weight, arity_index, .. } => {
            Cochain::Null { space: space.clone(), weight: weight + &(*arity_index * shift), arity_index: *arity_index }
        }
        Cochain::Element(e) => {
            Cochain::Element(DegreeMinusOneElement::new(space.clone(), &e.degree - shift, e.value.clone())?)
        }
        Cochain::Map(m) => {
            let mut out = MultiMap::zero_endo(space.clone(), m.arity(), m.weight() + &(m.arity_index() * shift));
            for (t, v) in m.entries() {
                out.add_to_entry(t.clone(), v)?;
            }
            Cochain::Map(out)
        }
    })
}

fn compatible<S: Scalar>(a: &AlphaAntisymOp<S>, b: &AlphaAntisymOp<S>) -> Result<()> {
    ensure_same(a.space(), b.space(), "operators on different algebras")?;
    if a.alpha != b.alpha {
        return input(format!("α differs: {} and {}", a.alpha, b.alpha));
    }
    Ok(())
}

/// `A □ B = (-1)^{1+ab} Σ_{|I|=b+1, |J|=a} (-1)^{(I;J)} ε_{↓V}(I;J) A(B(V_I), V_J)`,
/// with `v □ w = 0`, `A □ v = (-1)^{1-a} A(v)` and `v □ A = 0`.
pub fn square_product<S: Scalar>(a: &AlphaAntisymOp<S>, b: &AlphaAntisymOp<S>) -> Result<AlphaAntisymOp<S>> {
    compatible(a, b)?;
    let (ai, bi) = (a.arity_index(), b.arity_index());
    let space = a.space().clone();
    let alpha = a.alpha.clone();
    let weight = a.weight() + b.weight();
    let zero = || AlphaAntisymOp::unchecked(alpha.clone(), Cochain::zero(space.clone(), weight.clone(), ai + bi));
    if ai < 0 {
        return Ok(zero());
    }
    let Cochain::Map(am) = &a.cochain else { unreachable!() };
    let bm = match &b.cochain {
        Cochain::Element(v) => {
            return Ok(a.insert_first(&v.value, &v.degree)?.scale(&S::sign_power(1 - ai)));
        }
        Cochain::Map(m) => m,
        Cochain::Null { .. } => return Ok(zero()),
    };
    let (ua, ub) = (ai as usize, bi as usize);
    let p = ua + ub + 1;
    let mut out = MultiMap::zero_endo(space.clone(), p, weight);
    let parts = enumerate_partitions(PartitionSchema::TwoPart { len: p });
    let global = S::sign_power(1 + ai * bi);
    for tuple in space.tuples(p) {
        let down: Vec<Degree> = tuple.iter().map(|&i| space.degree(i) - &alpha).collect();
        let mut value = LinComb::new();
        for part in parts.iter().filter(|pt| pt[0].len() == ub + 1) {
            let (i, j) = (&part[0], &part[1]);
            let bargs: Vec<usize> = i.iter().map(|&s| tuple[s]).collect();
            let Some(bval) = bm.eval_basis(&bargs) else { continue };
            let concat: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            let sign = S::sign_power(inversion_count(&concat) + koszul_exponent(&down, &concat));
            for (&mid, c) in bval.iter() {
                let mut aargs = vec![mid];
                aargs.extend(j.iter().map(|&s| tuple[s]));
                if let Some(aval) = am.eval_basis(&aargs) {
                    value.add_scaled(aval, &(sign.clone() * c.clone()));
                }
            }
        }
        out.add_to_entry(tuple, &value.scaled(&global))?;
    }
    Ok(AlphaAntisymOp::unchecked(alpha, Cochain::Map(out)))
}

fn pairing<S: Scalar>(a: &AlphaAntisymOp<S>, b: &AlphaAntisymOp<S>) -> i64 {
    let (da, ia) = a.bidegree();
    let (db, ib) = b.bidegree();
    da.pair(&db) + ia * ib
}

/// `[A,B]^{GM} = A □ B - (-1)^{<A+αa, B+αb> + ab} B □ A`.
pub fn gm_bracket<S: Scalar>(a: &AlphaAntisymOp<S>, b: &AlphaAntisymOp<S>) -> Result<AlphaAntisymOp<S>> {
    let ab = square_product(a, b)?;
    let ba = square_product(b, a)?;
    ab.add(&ba.scale(&-S::sign_power(pairing(a, b))))
}

/// `∽[~A, ~B]^⊗`: the stem bracket on `↓A`, read back on `A`.
pub fn pullback_stem<S: Scalar>(a: &AlphaAntisymOp<S>, b: &AlphaAntisymOp<S>) -> Result<AlphaAntisymOp<S>> {
    compatible(a, b)?;
    let bracket = stem_bracket(&a.tilde()?, &b.tilde()?)?;
    AlphaAntisymOp::untilde(&a.alpha, a.space(), &bracket)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Jacobi,
    Poisson,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub holds: bool,
    /// `[π, π]^{GM} = 0`.
    pub canonical: bool,
    /// The first order rule `{u,vw} = {u,v}w + (-1)^{<u+α,v>} v{u,w} - {u,1}vw`.
    pub first_order: bool,
    /// `{u, 1} = 0` for every `u`.
    pub unit_central: bool,
    pub failing_triple: Option<Vec<usize>>,
}

/// Whether a bilinear `α`-antisymmetric bracket of weight `α` is a graded
/// Jacobi (resp. Poisson) structure on `alg`.
pub fn check_jacobi_structure<S: Scalar>(
    alg: &GradedAlgebra<S>,
    pi: &AlphaAntisymOp<S>,
    kind: StructureKind,
) -> Result<JacobiReport> {
    if !same_space(pi.space(), alg.space()) || pi.alpha() != alg.alpha() {
        return Err(Error::SpaceMismatch("bracket and algebra differ".into()));
    }
    let Cochain::Map(m) = pi.cochain() else {
        return input("a structure is a bilinear bracket");
    };
    if m.arity() != 2 || m.weight() != alg.alpha() {
        return input(format!("a structure is bilinear of weight α = {}", alg.alpha()));
    }
    if !pi.is_antisymmetric() {
        return input("bracket is not α-antisymmetric");
    }
    let canonical = gm_bracket(pi, pi)?.is_zero();
    let space = alg.space();
    let e = |i: usize| -> Coeffs<S> { LinComb::single(i, S::one()) };
    let br = |u: &Coeffs<S>, v: &Coeffs<S>| m.eval(&[u.clone(), v.clone()]);
    let one = e(alg.unit());
    let mut first_order = true;
    let mut failing = None;
    'outer: for u in 0..space.dim() {
        for v in 0..space.dim() {
            for w in 0..space.dim() {
                let (eu, ev, ew) = (e(u), e(v), e(w));
                let lhs = br(&eu, &alg.mul(&ev, &ew));
                let mut rhs = alg.mul(&br(&eu, &ev), &ew);
                let s = S::sign_power((space.degree(u) + alg.alpha()).pair(space.degree(v)));
                rhs.add_scaled(&alg.mul(&ev, &br(&eu, &ew)), &s);
                rhs.add_scaled(&alg.mul(&alg.mul(&br(&eu, &one), &ev), &ew), &-S::one());
                if lhs != rhs {
                    first_order = false;
                    failing = Some(vec![u, v, w]);
                    break 'outer;
                }
            }
        }
    }
    let unit_central = (0..space.dim()).all(|u| br(&e(u), &one).is_zero());
    let holds = canonical && first_order && (kind == StructureKind::Jacobi || unit_central);
    Ok(JacobiReport { holds, canonical, first_order, unit_central, failing_triple: failing })
}
