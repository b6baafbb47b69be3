use crate::error::{Error, Result};
use crate::graded::{
    enumerate_partitions, ensure_same, inversion_count, koszul_exponent, sum_degrees, Coeffs, Degree, LinComb,
    PartitionSchema,
};
use crate::scalar::Scalar;

use super::map::{Cochain, DegreeMinusOneElement, MultiMap};

/// The `Z^{n+1}` pairing `<A,B> + ab` of two bidegrees.
pub fn bidegree_pairing(a: (&Degree, i64), b: (&Degree, i64)) -> i64 {
    a.0.pair(b.0) + a.1 * b.1
}

fn require_endo<S: Scalar>(m: &MultiMap<S>, what: &str) -> Result<()> {
    if !m.is_endo() {
        return Err(Error::SpaceMismatch(format!("{what} must map a space to itself")));
    }
    Ok(())
}

/// The insertion operator `j_B A`: `B` is plugged into `A` and the result is
/// summed over all admissible positions with the Koszul, permutation and
/// weight signs.
pub fn insertion<S: Scalar>(a: &MultiMap<S>, b: &MultiMap<S>) -> Result<MultiMap<S>> {
    require_endo(a, "A")?;
    require_endo(b, "B")?;
    ensure_same(a.domain(), b.domain(), "insertion")?;
    let space = a.domain().clone();
    let n = space.n();
    let bb = b.arity_index() as usize;
    let p = a.arity() + b.arity() - 1;
    let mut out = MultiMap::zero_endo(space.clone(), p, a.weight() + b.weight());
    if a.is_zero() || b.is_zero() {
        return Ok(out);
    }
    let base = a.weight().pair(b.weight());
    let parts = enumerate_partitions(PartitionSchema::ThreePart { len: p, j_len: Some(bb) });
    for tuple in space.tuples(p) {
        let degs: Vec<Degree> = tuple.iter().map(|&i| space.degree(i).clone()).collect();
        let mut value: Coeffs<S> = LinComb::new();
        for part in parts.iter() {
            let (i, j, k) = (&part[0], &part[1], &part[2]);
            let mut bargs: Vec<usize> = j.iter().map(|&s| tuple[s]).collect();
            bargs.push(tuple[k[0]]);
            let Some(bval) = b.eval_basis(&bargs) else { continue };
            let vi = sum_degrees(n, i.iter().map(|&s| &degs[s]));
            let concat: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            let e = base
                + b.weight().pair(&vi)
                + (bb * i.len()) as i64
                + inversion_count(&concat)
                + koszul_exponent(&degs, &concat);
            let sign = S::sign_power(e);
            for (&mid, c) in bval.iter() {
                let mut aargs: Vec<usize> = i.iter().map(|&s| tuple[s]).collect();
                aargs.push(mid);
                aargs.extend(k[1..].iter().map(|&s| tuple[s]));
                if let Some(aval) = a.eval_basis(&aargs) {
                    value.add_scaled(aval, &(sign.clone() * c.clone()));
                }
            }
        }
        out.add_unchecked(tuple, &value, &S::one());
    }
    Ok(out)
}

/// `j_v A = (-1)^{<A,v>} A(v, ...)`: an element fills the first slot.
pub fn insert_element<S: Scalar>(a: &MultiMap<S>, v: &DegreeMinusOneElement<S>) -> Result<Cochain<S>> {
    require_endo(a, "A")?;
    ensure_same(a.domain(), &v.space, "insertion")?;
    let space = a.domain().clone();
    let weight = a.weight() + &v.degree;
    let sign = S::sign_power(a.weight().pair(&v.degree));
    if a.arity() == 1 {
        let value = a.eval(std::slice::from_ref(&v.value)).scaled(&sign);
        return Ok(Cochain::Element(DegreeMinusOneElement { space, degree: weight, value }));
    }
    let mut out = MultiMap::zero_endo(space, a.arity() - 1, weight);
    for (tuple, val) in a.entries() {
        if let Some(c) = v.value.get(&tuple[0]) {
            out.add_unchecked(tuple[1..].to_vec(), val, &(sign.clone() * c.clone()));
        }
    }
    Ok(Cochain::Map(out))
}

fn insert_cochain<S: Scalar>(outer: &Cochain<S>, inner: &Cochain<S>) -> Result<Cochain<S>> {
    let space = outer.space().clone();
    let weight = outer.weight() + inner.weight();
    let arity = outer.arity_index() + inner.arity_index();
    match (outer, inner) {
        (Cochain::Map(a), Cochain::Map(b)) => Ok(Cochain::Map(insertion(a, b)?)),
        (Cochain::Map(a), Cochain::Element(v)) => insert_element(a, v),
        _ => Ok(Cochain::zero(space, weight, arity)),
    }
}

/// The `Z^{n+1}`-graded stem bracket `[A,B] = j_A B - (-1)^{<A,B>+ab} j_B A`.
///
/// Vectors (arity index `-1`) are admitted: `j_A v = 0` and `j_v A` fills the
/// first slot, so `[A,v] = (-1)^{1-a} A(v, ...)` and `[v,w] = 0`.
pub fn stem_bracket<S: Scalar>(x: &Cochain<S>, y: &Cochain<S>) -> Result<Cochain<S>> {
    ensure_same(x.space(), y.space(), "stem bracket")?;
    let e = bidegree_pairing((x.weight(), x.arity_index()), (y.weight(), y.arity_index()));
    let first = insert_cochain(y, x)?;
    let second = insert_cochain(x, y)?;
    first.sub(&second.scale(&S::sign_power(e)))
}

/// Stem bracket of two multilinear maps.
pub fn stem_bracket_maps<S: Scalar>(a: &MultiMap<S>, b: &MultiMap<S>) -> Result<MultiMap<S>> {
    let e = bidegree_pairing((a.weight(), a.arity_index()), (b.weight(), b.arity_index()));
    insertion(b, a)?.sub(&insertion(a, b)?.scale(&S::sign_power(e)))
}

fn permutations(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..len).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Graded skew-symmetrization: the average over all argument permutations
/// weighted by signature times Koszul sign.
pub fn antisymmetrize<S: Scalar>(a: &MultiMap<S>) -> MultiMap<S> {
    let space = a.domain().clone();
    let p = a.arity();
    let perms = permutations(p);
    let mut factorial = S::one();
    for k in 2..=p {
        factorial = factorial * S::from_int(k as i64);
    }
    let inv = S::one() / factorial;
    let mut out = MultiMap::zero(space.clone(), a.codomain().clone(), p, a.weight().clone());
    for tuple in space.tuples(p) {
        let degs: Vec<Degree> = tuple.iter().map(|&i| space.degree(i).clone()).collect();
        let mut value: Coeffs<S> = LinComb::new();
        for perm in &perms {
            let args: Vec<usize> = perm.iter().map(|&s| tuple[s]).collect();
            if let Some(v) = a.eval_basis(&args) {
                let e = inversion_count(perm) + koszul_exponent(&degs, perm);
                value.add_scaled(v, &S::sign_power(e));
            }
        }
        out.add_unchecked(tuple, &value, &inv);
    }
    out
}

/// Checks `A(.., u, v, ..) = -(-1)^{<u,v>} A(.., v, u, ..)` for every adjacent
/// transposition of every basis tuple.
pub fn is_graded_antisymmetric<S: Scalar>(a: &MultiMap<S>) -> bool {
    let space = a.domain();
    let zero = LinComb::new();
    for tuple in space.tuples(a.arity()) {
        let lhs = a.eval_basis(&tuple).unwrap_or(&zero);
        for s in 0..a.arity().saturating_sub(1) {
            let mut swapped = tuple.clone();
            swapped.swap(s, s + 1);
            let rhs = a.eval_basis(&swapped).unwrap_or(&zero);
            let e = 1 + space.degree(tuple[s]).pair(space.degree(tuple[s + 1]));
            if !lhs.sub(&rhs.scaled(&S::sign_power(e))).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{GradedSpace, SpaceRef};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    fn f1() -> (SpaceRef, MultiMap<Q>) {
        let v = GradedSpace::from_pairs(1, &[("x", &[0]), ("y", &[0])]).unwrap();
        let pi = MultiMap::from_named(v.clone(), v.clone(), 2, Degree::zero(1), &[(&["x", "x"], &[(q(1), "y")])]).unwrap();
        (v, pi)
    }

    #[test]
    fn unary_insertion_is_composition() {
        let v = GradedSpace::from_pairs(1, &[("x", &[0]), ("y", &[0])]).unwrap();
        let a = MultiMap::from_named(v.clone(), v.clone(), 1, Degree::zero(1), &[(&["x"], &[(q(1), "y")])]).unwrap();
        let b = MultiMap::from_named(v.clone(), v.clone(), 1, Degree::zero(1), &[(&["y"], &[(q(2), "x")])]).unwrap();
        assert_eq!(insertion(&a, &b).unwrap(), a.compose_unary(&b).unwrap());
        let zero = MultiMap::zero_endo(v, 1, Degree::zero(1));
        assert!(insertion(&a, &zero).unwrap().is_zero());
    }

    #[test]
    fn f1_self_insertion_vanishes_on_xxx() {
        let (v, pi) = f1();
        let j = insertion(&pi, &pi).unwrap();
        let x = v.index_of("x").unwrap();
        assert!(j.eval_basis(&[x, x, x]).is_none());
        assert!(stem_bracket_maps(&pi, &pi).unwrap().is_zero());
    }

    #[test]
    fn element_bracket_fills_first_slot() {
        let (v, pi) = f1();
        let x = v.index_of("x").unwrap();
        let y = v.index_of("y").unwrap();
        let e = DegreeMinusOneElement::new(v.clone(), Degree::zero(1), LinComb::single(x, q(1))).unwrap();
        let r = stem_bracket(&Cochain::Map(pi), &Cochain::Element(e.clone())).unwrap();
        let m = r.as_map().unwrap();
        assert_eq!(m.eval_basis(&[x]).unwrap().coeff(&y), q(1));
        assert!(m.eval_basis(&[y]).is_none());
        let zero = stem_bracket(&Cochain::Element(e.clone()), &Cochain::Element(e)).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.arity_index(), -2);
    }

    #[test]
    fn antisymmetrization() {
        let (v, pi) = f1();
        assert!(!is_graded_antisymmetric(&pi));
        assert!(antisymmetrize(&pi).is_zero());
        let x = v.index_of("x").unwrap();
        let y = v.index_of("y").unwrap();
        let mut skew = MultiMap::zero_endo(v.clone(), 2, Degree::zero(1));
        skew.set_entry(vec![x, y], LinComb::single(x, q(1))).unwrap();
        skew.set_entry(vec![y, x], LinComb::single(x, q(-1))).unwrap();
        assert!(is_graded_antisymmetric(&skew));
        assert_eq!(antisymmetrize(&skew), skew);
    }
}
