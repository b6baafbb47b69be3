//! Small named examples used by the tests and the command line tool.

use crate::graded::{Degree, GradedSpace, SpaceRef};
use crate::multilinear::MultiMap;
use crate::scalar::Scalar;
use crate::structures::{LodInftyStructure, DEFAULT_MAX_ARITY};

/// `x, y` of degree 0 (n = 1).
pub fn f1_space() -> SpaceRef {
    GradedSpace::from_pairs(1, &[("x", &[0]), ("y", &[0])]).expect("valid space")
}

/// The two-dimensional Leibniz algebra `{x,x} = y`.
pub fn f1<S: Scalar>() -> MultiMap<S> {
    let v = f1_space();
    MultiMap::from_named(v.clone(), v, 2, Degree::new(vec![0]), &[(&["x", "x"], &[(S::one(), "y")])])
        .expect("valid table")
}

/// `{x,x} = y`, `{y,x} = x`: fails the Jacobi identity on `(x,x,x)`.
pub fn f1_broken<S: Scalar>() -> MultiMap<S> {
    let v = f1_space();
    MultiMap::from_named(
        v.clone(),
        v,
        2,
        Degree::new(vec![0]),
        &[(&["x", "x"], &[(S::one(), "y")]), (&["y", "x"], &[(S::one(), "x")])],
    )
    .expect("valid table")
}

/// F1 as a Loday infinity structure with `π_1 = 0` and `π_2 = {-,-}`.
pub fn f1_dglod<S: Scalar>() -> LodInftyStructure<S> {
    LodInftyStructure::from_maps(f1_space(), vec![f1()], DEFAULT_MAX_ARITY).expect("valid structure")
}

/// `w` of degree 0, `u` of degree 1.
pub fn f2_space() -> SpaceRef {
    GradedSpace::from_pairs(1, &[("w", &[0]), ("u", &[1])]).expect("valid space")
}

/// The contractible complex `π_1(w) = u`.
pub fn f2<S: Scalar>() -> LodInftyStructure<S> {
    let v = f2_space();
    let d = MultiMap::from_named(v.clone(), v.clone(), 1, Degree::new(vec![1]), &[(&["w"], &[(S::one(), "u")])])
        .expect("valid table");
    LodInftyStructure::from_maps(v, vec![d], DEFAULT_MAX_ARITY).expect("valid structure")
}

/// `a` of degree (1,0), `b` of degree (0,1).
pub fn f3_space() -> SpaceRef {
    GradedSpace::from_pairs(2, &[("a", &[1, 0]), ("b", &[0, 1])]).expect("valid space")
}

/// The direct sum F1 ⊕ F2, a Loday algebra up to homotopy with both a
/// differential and a bracket.
pub fn f1_plus_f2<S: Scalar>() -> LodInftyStructure<S> {
    f1_dglod().direct_sum(&f2()).expect("equal base weights")
}
