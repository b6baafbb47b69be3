#![allow(dead_code)]

use loday_core::graded::{Degree, GradedSpace, LinComb, SpaceRef};
use loday_core::multilinear::MultiMap;
use loday_core::{QMap, Rat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

pub fn random_space(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> SpaceRef {
    let names: Vec<String> = (0..dim).map(|i| format!("b{i}")).collect();
    let degs: Vec<Vec<i64>> = (0..dim).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
    let pairs: Vec<(&str, &[i64])> = names.iter().zip(&degs).map(|(a, d)| (a.as_str(), d.as_slice())).collect();
    GradedSpace::from_pairs(n, &pairs).unwrap()
}

/// A weight for which at least one basis tuple has an admissible value.
pub fn reachable_weight(rng: &mut ChaCha8Rng, space: &SpaceRef, arity: usize) -> Degree {
    let tuple: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..space.dim())).collect();
    let target = rng.gen_range(0..space.dim());
    let mut w = space.degree(target).clone();
    for &i in &tuple {
        w = &w - space.degree(i);
    }
    w
}

pub fn random_map(rng: &mut ChaCha8Rng, space: &SpaceRef, arity: usize, weight: &Degree, density: f64) -> QMap {
    random_map_between(rng, space, space, arity, weight, density)
}

pub fn random_map_between(
    rng: &mut ChaCha8Rng,
    dom: &SpaceRef,
    cod: &SpaceRef,
    arity: usize,
    weight: &Degree,
    density: f64,
) -> QMap {
    let mut m = MultiMap::zero(dom.clone(), cod.clone(), arity, weight.clone());
    for t in dom.tuples(arity) {
        let target = m.target_degree(&t);
        let mut v = LinComb::new();
        for k in cod.indices_of_degree(&target) {
            if rng.gen_bool(density) {
                let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
                v.add_term(k, q(c));
            }
        }
        m.set_entry(t, v).unwrap();
    }
    m
}

/// A random homogeneous map whose arity and weight are drawn so that it is
/// usually nonzero.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, space: &SpaceRef, max_arity_index: usize) -> QMap {
    let arity = rng.gen_range(1..=max_arity_index + 1);
    let w = reachable_weight(rng, space, arity);
    random_map(rng, space, arity, &w, 0.6)
}

use loday_core::multilinear::MapSequence;
use loday_core::structures::LodInftyStructure;
use loday_core::QSequence;

pub type QStructure = LodInftyStructure<Rat>;

/// `x, y` of degree 0 with `π_2(x,x) = y`, weight `e1`.
pub fn loday_piece(n: usize, tag: &str) -> QStructure {
    let zero = vec![0i64; n];
    let (x, y) = (format!("x{tag}"), format!("y{tag}"));
    let v = GradedSpace::from_pairs(n, &[(&x, &zero), (&y, &zero)]).unwrap();
    let m = MultiMap::from_named(v.clone(), v.clone(), 2, Degree::zero(n), &[(&[x.as_str(), x.as_str()], &[(q(1), y.as_str())])])
        .unwrap();
    LodInftyStructure::from_maps(v, vec![m], 4).unwrap()
}

/// `π_1(w) = u` with `w` of degree `d`.
pub fn contractible_piece(n: usize, d: &[i64], tag: &str) -> QStructure {
    let mut du = d.to_vec();
    du[0] += 1;
    let (w, u) = (format!("w{tag}"), format!("u{tag}"));
    let v = GradedSpace::from_pairs(n, &[(&w, d), (&u, &du)]).unwrap();
    let m = MultiMap::from_named(v.clone(), v.clone(), 1, Degree::e1(n), &[(&[w.as_str()], &[(q(1), u.as_str())])]).unwrap();
    LodInftyStructure::from_maps(v, vec![m], 4).unwrap()
}

/// `1-2` summands, each a Loday piece, a contractible pair or a zero line.
pub fn random_base(rng: &mut ChaCha8Rng, n: usize) -> QStructure {
    let pieces = rng.gen_range(1..=2);
    let mut out: Option<QStructure> = None;
    for k in 0..pieces {
        let tag = k.to_string();
        let piece = match rng.gen_range(0..3) {
            0 => loday_piece(n, &tag),
            1 => {
                let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=0)).collect();
                contractible_piece(n, &d, &tag)
            }
            _ => {
                let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
                let v = GradedSpace::from_pairs(n, &[(&format!("z{tag}"), &d)]).unwrap();
                LodInftyStructure::zero(v, 4)
            }
        };
        out = Some(match out {
            None => piece,
            Some(s) => s.direct_sum(&piece).unwrap(),
        });
    }
    out.unwrap()
}

/// A weight-0 automorphism: identity plus random entries within each degree.
pub fn random_linear_iso(rng: &mut ChaCha8Rng, space: &SpaceRef) -> QMap {
    let mut m = MultiMap::identity(space.clone());
    for i in 0..space.dim() {
        for j in 0..space.dim() {
            if i < j && space.degree(i) == space.degree(j) && rng.gen_bool(0.5) {
                let c = *[-1i64, 1, 2].choose(rng).unwrap();
                let mut v = m.eval_basis(&[j]).cloned().unwrap_or_default();
                v.add_term(i, q(c));
                m.set_entry(vec![j], v).unwrap();
            }
        }
    }
    m
}

/// `(f_1, f_2, ..., f_max)` with invertible `f_1` and random higher maps.
pub fn random_morphism_maps(rng: &mut ChaCha8Rng, space: &SpaceRef, max: usize, unit: bool) -> QSequence {
    let mut seq = MapSequence::new(space.clone(), space.zero_degree());
    let f1 = if unit { MultiMap::identity(space.clone()) } else { random_linear_iso(rng, space) };
    seq.insert(f1).unwrap();
    for p in 2..=max {
        let w = (1 - p as i64) * &space.e1();
        seq.insert(random_map(rng, space, p, &w, 0.5)).unwrap();
    }
    seq
}

/// The Lie algebra sl2 = span{e, f, h} as a Loday bracket.
pub fn sl2() -> QMap {
    let v = GradedSpace::from_pairs(1, &[("e", &[0]), ("f", &[0]), ("h", &[0])]).unwrap();
    MultiMap::from_named(
        v.clone(),
        v,
        2,
        Degree::zero(1),
        &[
            (&["e", "f"], &[(q(1), "h")]),
            (&["f", "e"], &[(q(-1), "h")]),
            (&["h", "e"], &[(q(2), "e")]),
            (&["e", "h"], &[(q(-2), "e")]),
            (&["h", "f"], &[(q(-2), "f")]),
            (&["f", "h"], &[(q(2), "f")]),
        ],
    )
    .unwrap()
}

/// Rejection-sampled nonzero graded Loday brackets on small spaces with
/// degrees in {0, 1}.
pub fn random_loday(rng: &mut ChaCha8Rng, n: usize) -> QMap {
    loop {
        let dim = rng.gen_range(2..=3);
        let names: Vec<String> = (0..dim).map(|i| format!("b{i}")).collect();
        let degs: Vec<Vec<i64>> = (0..dim).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
        let pairs: Vec<(&str, &[i64])> = names.iter().zip(&degs).map(|(a, d)| (a.as_str(), d.as_slice())).collect();
        let v = GradedSpace::from_pairs(n, &pairs).unwrap();
        let m = random_map(rng, &v, 2, &Degree::zero(n), 0.25);
        if !m.is_zero() && loday_core::structures::check_loday(&m).unwrap().holds {
            return m;
        }
    }
}
