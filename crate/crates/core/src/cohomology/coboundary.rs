use crate::error::{input, Result};
use crate::graded::{ensure_same, sum_degrees, Coeffs, LinComb};
use crate::multilinear::{
    is_graded_antisymmetric, sequence_bracket, stem_bracket_maps, Cochain, MapSequence, MultiMap,
};
use crate::scalar::Scalar;
use crate::structures::LodInftyStructure;

fn unit<S: Scalar>(i: usize) -> Coeffs<S> {
    LinComb::single(i, S::one())
}

/// The graded Loday coboundary written out term by term:
///
/// `(∂B)(v_1..v_{b+2}) = (-1)^{b+1}{B(v_1..v_{b+1}), v_{b+2}}
///   - Σ_i (-1)^{i-1+<B+v_1+..+v_{i-1}, v_i>} {v_i, B(.., v̂_i, .., v_{b+2})}
///   + Σ_{j<=i} (-1)^{j+1+<v_j, v_{j+1}+..+v_i>} B(.., v̂_j, .., v_i, {v_j, v_{i+1}}, ..)`
///
/// and `(∂v)(w) = {v, w}` on elements.
pub fn loday_coboundary<S: Scalar>(pi: &MultiMap<S>, b: &Cochain<S>) -> Result<Cochain<S>> {
    if pi.arity() != 2 || !pi.weight().is_zero() || !pi.is_endo() {
        return input("a Loday bracket is a weight 0 bilinear map");
    }
    ensure_same(pi.domain(), b.space(), "Loday coboundary")?;
    let space = pi.domain().clone();
    match b {
        Cochain::Null { weight, arity_index, .. } => Ok(Cochain::zero(space, weight.clone(), arity_index + 1)),
        Cochain::Element(v) => {
            let mut out = MultiMap::zero_endo(space.clone(), 1, v.degree.clone());
            for w in 0..space.dim() {
                let val = pi.eval(&[v.value.clone(), unit(w)]);
                if !val.is_zero() {
                    out.add_to_entry(vec![w], &val)?;
                }
            }
            Ok(Cochain::Map(out))
        }
        Cochain::Map(bm) => {
            let n = space.n();
            let bw = bm.weight().clone();
            let ar = bm.arity();
            let mut out = MultiMap::zero_endo(space.clone(), ar + 1, bw.clone());
            for t in space.tuples(ar + 1) {
                let d: Vec<_> = t.iter().map(|&i| space.degree(i).clone()).collect();
                let mut val: Coeffs<S> = LinComb::new();
                if let Some(x) = bm.eval_basis(&t[..ar]) {
                    val.add_scaled(&pi.eval(&[x.clone(), unit(t[ar])]), &S::sign_power(ar as i64));
                }
                for i in 0..ar {
                    let mut args: Vec<usize> = t.clone();
                    args.remove(i);
                    if let Some(x) = bm.eval_basis(&args) {
                        let prior = &bw + &sum_degrees(n, &d[..i]);
                        let e = 1 + i as i64 + prior.pair(&d[i]);
                        val.add_scaled(&pi.eval(&[unit(t[i]), x.clone()]), &S::sign_power(e));
                    }
                }
                for i in 0..ar {
                    for j in 0..=i {
                        let inner = pi.eval(&[unit(t[j]), unit(t[i + 1])]);
                        if inner.is_zero() {
                            continue;
                        }
                        let mut args: Vec<Coeffs<S>> = Vec::with_capacity(ar);
                        for (k, &x) in t.iter().enumerate() {
                            if k == j {
                                continue;
                            }
                            if k == i + 1 {
                                args.push(inner.clone());
                            } else {
                                args.push(unit(x));
                            }
                        }
                        let e = j as i64 + d[j].pair(&sum_degrees(n, &d[j + 1..=i]));
                        val.add_scaled(&bm.eval(&args), &S::sign_power(e));
                    }
                }
                if !val.is_zero() {
                    out.add_to_entry(t, &val)?;
                }
            }
            Ok(Cochain::Map(out))
        }
    }
}

/// `[π, ρ]` in the sequence bracket.
pub fn lod_infty_coboundary<S: Scalar>(pi: &LodInftyStructure<S>, rho: &MapSequence<S>) -> Result<MapSequence<S>> {
    sequence_bracket(pi.maps(), rho)
}

/// Whether the coboundary of `ρ ∈ C_k(V)` stays in `C_k(V)`.
pub fn preserves_filtration<S: Scalar>(pi: &LodInftyStructure<S>, rho: &MapSequence<S>, k: usize) -> Result<bool> {
    if rho.min_arity().is_some_and(|m| m < k) {
        return input(format!("sequence has a map of arity below {k}"));
    }
    let image = lod_infty_coboundary(pi, rho)?;
    Ok(image.min_arity().is_none_or(|m| m >= k))
}

/// Whether every map of the sequence is graded antisymmetric.
pub fn is_antisymmetric_sequence<S: Scalar>(seq: &MapSequence<S>) -> bool {
    seq.maps().all(|(_, m)| is_graded_antisymmetric(m))
}

/// `[π_p, π_p] = 0` for a weight-0 map of even arity `p`.
pub fn check_p_ary<S: Scalar>(pi: &MultiMap<S>, p: usize) -> Result<bool> {
    if p % 2 == 1 || p == 0 {
        return input(format!("p-ary Loday structures need p even, got {p}"));
    }
    if pi.arity() != p || !pi.weight().is_zero() || !pi.is_endo() {
        return input(format!("expected a weight 0 map of arity {p}"));
    }
    Ok(stem_bracket_maps(pi, pi)?.is_zero())
}
