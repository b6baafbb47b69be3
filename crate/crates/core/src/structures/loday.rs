use crate::error::{input, Result};
use crate::graded::{Coeffs, LinComb};
use crate::multilinear::MultiMap;
use crate::scalar::Scalar;

/// Outcome of the graded Jacobi check, with every failing basis triple.
#[derive(Clone, Debug, PartialEq)]
pub struct LodayReport<S: Scalar> {
    pub holds: bool,
    pub failures: Vec<(Vec<usize>, Coeffs<S>)>,
}

fn bracket<S: Scalar>(pi: &MultiMap<S>, a: &Coeffs<S>, b: &Coeffs<S>) -> Coeffs<S> {
    pi.eval(&[a.clone(), b.clone()])
}

/// `{a,{b,c}} - {{a,b},c} - (-1)^{<a,b>}{b,{a,c}}` on basis elements.
pub fn jacobi_residual<S: Scalar>(pi: &MultiMap<S>, a: usize, b: usize, c: usize) -> Coeffs<S> {
    let e = |i: usize| LinComb::single(i, S::one());
    let space = pi.domain();
    let lhs = bracket(pi, &e(a), &bracket(pi, &e(b), &e(c)));
    let first = bracket(pi, &bracket(pi, &e(a), &e(b)), &e(c));
    let sign = S::sign_power(space.degree(a).pair(space.degree(b)));
    let second = bracket(pi, &e(b), &bracket(pi, &e(a), &e(c))).scaled(&sign);
    lhs.sub(&first).sub(&second)
}

/// Checks that a weight-zero bilinear map is a graded Loday bracket.
pub fn check_loday<S: Scalar>(pi: &MultiMap<S>) -> Result<LodayReport<S>> {
    if pi.arity() != 2 || !pi.weight().is_zero() || !pi.is_endo() {
        return input(format!(
            "a Loday bracket has bidegree (0,1), got ({}, {})",
            pi.weight(),
            pi.arity_index()
        ));
    }
    let mut failures = Vec::new();
    for t in pi.domain().tuples(3) {
        let r = jacobi_residual(pi, t[0], t[1], t[2]);
        if !r.is_zero() {
            failures.push((t, r));
        }
    }
    Ok(LodayReport { holds: failures.is_empty(), failures })
}
