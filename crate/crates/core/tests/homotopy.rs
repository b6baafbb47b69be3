mod common;

use common::*;
use loday_core::error::Error;
use loday_core::fixtures::{f1, f1_dglod, f1_plus_f2, f2};
use loday_core::graded::{Degree, GradedSpace, LinComb, SpaceRef};
use loday_core::homotopy::{
    build_f2, correction_candidate, inverts_on_cohomology, minimal_model, quasi_inverse, solve_correction, split_complex,
    transfer_formula_holds, transfer_step, Part, StepMethod,
};
use loday_core::multilinear::{MapSequence, MultiMap};
use loday_core::structures::{
    check_morphism, invert_morphism, is_quasi_isomorphism, linear_cohomology, transport, LodInftyMorphism,
    LodInftyStructure,
};
use loday_core::{QMap, Rat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn unit(i: usize) -> LinComb<usize, Rat> {
    LinComb::single(i, q(1))
}

/// A base structure moved by a random automorphism, so that the split is
/// not aligned with the basis. With `higher` the morphism has nonlinear
/// parts as well.
fn random_structure(rng: &mut ChaCha8Rng, higher: bool) -> QStructure {
    loop {
        let base = random_base(rng, 1);
        if base.space().dim() > 4 {
            continue;
        }
        let f = random_morphism_maps(rng, base.space(), if higher { 2 } else { 1 }, false);
        return transport(&base, &f, 4).unwrap().0;
    }
}

fn contractible_cohomology_vanishes(s: &QStructure) -> bool {
    linear_cohomology(s.space(), &s.at(1)).iter().all(|h| h.dim() == 0)
}

#[test]
fn split_examples() {
    let s = f2::<Rat>();
    let (split, h) = split_complex(s.space(), &s.at(1)).unwrap();
    assert!(split.harmonic().is_empty());
    let b = split.boundaries();
    let w = split.complement();
    assert_eq!(b.len(), 1);
    assert_eq!(w.len(), 1);
    assert_eq!(b[0].vector, unit(1));
    assert_eq!(w[0].vector, unit(0));
    assert_eq!(h.delta.eval(&[unit(1)]), unit(0));
    assert!(h.delta.eval(&[unit(0)]).is_zero());
    assert!(h.projection.is_zero());

    for s in [f1_dglod::<Rat>(), LodInftyStructure::zero(s.space().clone(), 2)] {
        let (split, h) = split_complex(s.space(), &s.at(1)).unwrap();
        assert_eq!(split.harmonic_dim(), s.space().dim());
        assert!(split.boundaries().is_empty() && split.complement().is_empty());
        assert!(h.delta.is_zero());
        assert_eq!(h.projection, MultiMap::identity(s.space().clone()));
    }
}

#[test]
fn split_rejects_non_differentials() {
    let v = GradedSpace::from_pairs(1, &[("a", &[0]), ("b", &[1]), ("c", &[2])]).unwrap();
    let d = MultiMap::from_named(v.clone(), v.clone(), 1, Degree::e1(1), &[(&["a"], &[(q(1), "b")]), (&["b"], &[(q(1), "c")])])
        .unwrap();
    assert!(matches!(split_complex(&v, &d), Err(Error::Input(_))));
}

#[test]
fn split_invariants_on_random_complexes() {
    let mut rng = rng(61);
    for _ in 0..15 {
        let s = random_structure(&mut rng, false);
        let pi1 = s.at(1);
        let (split, h) = split_complex(s.space(), &pi1).unwrap();
        assert!(h.is_homotopy(&pi1));
        for v in split.cycles() {
            assert!(pi1.eval(&[v.vector.clone()]).is_zero());
        }
        for v in split.complement() {
            let image = &split.vectors()[v.partner.unwrap()];
            assert_eq!(image.part, Part::Boundary);
            assert_eq!(pi1.eval(&[v.vector.clone()]), image.vector);
            assert_eq!(h.delta.eval(&[image.vector.clone()]), v.vector);
        }
        for v in split.harmonic() {
            assert_eq!(h.projection.eval(&[v.vector.clone()]), v.vector);
        }
        let dims: usize = linear_cohomology(s.space(), &pi1).iter().map(|c| c.dim()).sum();
        assert_eq!(split.harmonic_dim(), dims);
    }
}

#[test]
fn f2_formula_cases() {
    let s = f1_plus_f2::<Rat>();
    let (split, h) = split_complex(s.space(), &s.at(1)).unwrap();
    let zero = LodInftyStructure::from_maps(s.space().clone(), vec![s.at(1)], 4).unwrap();
    assert!(build_f2(&zero, &split, &h).unwrap().is_zero());

    let mut rng = rng(62);
    for _ in 0..10 {
        let s = random_structure(&mut rng, true);
        let (split, h) = split_complex(s.space(), &s.at(1)).unwrap();
        let f2 = build_f2(&s, &split, &h).unwrap();
        assert_eq!(f2.weight(), &-&s.space().e1());
        assert_eq!(correction_candidate(&s.at(2), &split, &h).unwrap(), f2);
        for a in split.complement() {
            for b in split.complement() {
                let args = [a.vector.clone(), b.vector.clone()];
                assert_eq!(f2.eval(&args), h.delta.eval(&[s.at(2).eval(&args)]));
            }
        }
    }
}

/// `π_2(w, u) = u = -π_2(u, w)` extends F2; `f_2(u, u)` falls in the
/// `B × Z` case with preimage `w`.
#[test]
fn f2_on_extended_f2() {
    let base = f2::<Rat>();
    let v = base.space().clone();
    let p2 = MultiMap::from_named(
        v.clone(),
        v.clone(),
        2,
        Degree::zero(1),
        &[(&["w", "u"], &[(q(1), "u")]), (&["u", "w"], &[(q(-1), "u")])],
    )
    .unwrap();
    let s = LodInftyStructure::from_maps(v.clone(), vec![base.at(1), p2.clone()], 4).unwrap();
    assert!(s.check().holds);
    let (split, h) = split_complex(&v, &s.at(1)).unwrap();
    let f2 = build_f2(&s, &split, &h).unwrap();
    let (w, u) = (unit(0), unit(1));
    let mut expected = h.delta.eval(&[p2.eval(&[u.clone(), u.clone()])]);
    expected.add_assign(&h.projection.eval(&[p2.eval(&[w.clone(), u.clone()])]));
    assert_eq!(f2.eval(&[u.clone(), u.clone()]), expected);
    assert_eq!(f2.eval(&[w.clone(), u.clone()]), h.delta.eval(&[u.clone()]));
    let t = transfer_step(&s, &f2).unwrap();
    assert!(t.at(2).is_zero());
}

#[test]
fn transfer_step_properties() {
    let s = f1_plus_f2::<Rat>();
    let zero = MultiMap::zero_endo(s.space().clone(), 2, -&s.space().e1());
    assert_eq!(transfer_step(&s, &zero).unwrap().maps(), s.maps());

    let mut rng = rng(63);
    for _ in 0..10 {
        let higher = rng.gen_bool(0.5);
        let s = random_structure(&mut rng, higher);
        let (split, h) = split_complex(s.space(), &s.at(1)).unwrap();
        let f2 = build_f2(&s, &split, &h).unwrap();
        let t = transfer_step(&s, &f2).unwrap();
        assert!(t.check().holds);
        assert!(transfer_formula_holds(&s, &f2, &t));
        let new2 = t.at(2);
        for a in split.vectors() {
            for b in split.vectors() {
                let got = new2.eval(&[a.vector.clone(), b.vector.clone()]);
                if a.part == Part::Harmonic && b.part == Part::Harmonic {
                    let want = h.projection.eval(&[s.at(2).eval(&[a.vector.clone(), b.vector.clone()])]);
                    assert_eq!(got, want);
                } else {
                    assert!(got.is_zero(), "{:?} x {:?}", a.part, b.part);
                }
            }
        }
    }
}

#[test]
fn minimal_model_examples() {
    let s = f2::<Rat>();
    let mm = minimal_model(&s, 4).unwrap();
    assert_eq!(mm.minimal.space().dim(), 0);
    assert_eq!(mm.contractible.maps().truncated(4), s.maps().clone());
    assert_eq!(mm.iso.maps(), LodInftyMorphism::identity(&s).maps());

    let s = f1_dglod::<Rat>();
    let mm = minimal_model(&s, 4).unwrap();
    assert_eq!(mm.contractible.space().dim(), 0);
    assert_eq!(mm.minimal.at(2), f1::<Rat>());
    assert_eq!(mm.iso.maps(), LodInftyMorphism::identity(&s).maps());

    let s = f1_plus_f2::<Rat>();
    let mm = minimal_model(&s, 4).unwrap();
    assert_eq!(mm.minimal.at(2), f1::<Rat>());
    assert_eq!(mm.contractible.maps(), f2::<Rat>().maps());
    assert_eq!(mm.iso.maps(), LodInftyMorphism::identity(&s).maps());
    assert!(mm.steps.iter().all(|(_, m)| *m == StepMethod::Unchanged));
}

/// F1 ⊕ F2 conjugated by `f_2(x, u) = x`, `f_2(u, u) = u`: a nontrivial iso.
#[test]
fn minimal_model_with_cross_terms() {
    let s = f1_plus_f2::<Rat>();
    let v = s.space().clone();
    let f2m = MultiMap::from_named(
        v.clone(),
        v.clone(),
        2,
        Degree::new(vec![-1]),
        &[(&["x", "u"], &[(q(1), "x")]), (&["u", "u"], &[(q(1), "u")])],
    )
    .unwrap();
    let seq = MapSequence::from_maps(v.clone(), v.zero_degree(), vec![MultiMap::identity(v.clone()), f2m]).unwrap();
    let t = transport(&s, &seq, 4).unwrap().0;
    assert_ne!(t.maps(), s.maps());
    let mm = minimal_model(&t, 4).unwrap();
    assert_eq!(mm.minimal.space().dim(), 2);
    assert!(mm.minimal.at(1).is_zero());
    assert!(check_morphism(&mm.iso, 4).unwrap().holds);
    assert_ne!(mm.iso.maps(), LodInftyMorphism::identity(&t).maps());
}

#[test]
fn random_minimal_models() {
    let mut rng = rng(64);
    for round in 0..10 {
        let s = random_structure(&mut rng, round % 2 == 1);
        let mm = minimal_model(&s, 4).unwrap();
        assert!(mm.minimal.at(1).is_zero());
        assert!(mm.minimal.check().holds);
        assert!(mm.contractible.maps().maps().all(|(p, _)| p == 1));
        assert!(contractible_cohomology_vanishes(&mm.contractible));
        assert!(check_morphism(&mm.iso, 4).unwrap().holds);
        let to_min = mm.to_minimal().unwrap();
        assert!(is_quasi_isomorphism(&to_min));
        assert!(is_quasi_isomorphism(&mm.inclusion().unwrap()));
    }
}

fn projection_onto_f1() -> LodInftyMorphism<Rat> {
    let src = f1_plus_f2::<Rat>();
    let dst = f1_dglod::<Rat>();
    let (a, b): (&SpaceRef, &SpaceRef) = (src.space(), dst.space());
    let p = MultiMap::from_named(a.clone(), b.clone(), 1, Degree::zero(1), &[(&["x"], &[(q(1), "x")]), (&["y"], &[(q(1), "y")])])
        .unwrap();
    LodInftyMorphism::from_maps(src, dst, vec![p]).unwrap()
}

#[test]
fn quasi_inverse_of_projection() {
    let f = projection_onto_f1();
    assert!(check_morphism(&f, 3).unwrap().holds);
    let g = quasi_inverse(&f, 3).unwrap();
    assert!(check_morphism(&g, 3).unwrap().holds);
    assert!(inverts_on_cohomology(&f, &g));
    let g1: QMap = g.at(1);
    assert_eq!(g1.eval(&[unit(0)]), unit(0));
    assert_eq!(g1.eval(&[unit(1)]), unit(1));
}

#[test]
fn quasi_inverse_of_isomorphisms() {
    let s = f1_plus_f2::<Rat>();
    let id = LodInftyMorphism::identity(&s);
    let g = quasi_inverse(&id, 3).unwrap();
    assert!(inverts_on_cohomology(&id, &g));
    assert!(inverts_on_cohomology(&g, &id));

    let mut rng = rng(65);
    for _ in 0..4 {
        let s = random_structure(&mut rng, false);
        let seq = random_morphism_maps(&mut rng, s.space(), 2, false);
        let (_, f) = transport(&s, &seq, 3).unwrap();
        let g = quasi_inverse(&f, 3).unwrap();
        let inv = invert_morphism(&f, 3).unwrap();
        assert!(inverts_on_cohomology(&f, &g));
        assert!(inverts_on_cohomology(&f, &inv));
        assert!(inverts_on_cohomology(&g, &f));
    }
}

#[test]
fn quasi_inverse_rejects_non_quasi_isomorphisms() {
    let s = f1_dglod::<Rat>();
    let zero = MultiMap::zero_endo(s.space().clone(), 1, s.space().zero_degree());
    let f = LodInftyMorphism::from_maps(s.clone(), s, vec![zero]).unwrap();
    assert!(matches!(quasi_inverse(&f, 3), Err(Error::NotQuasiIsomorphism(_))));
}

/// Mixed bases moved by morphisms with `f_2, f_3`: every arity needs a
/// correction, and the closed formula finds it.
fn entangled(rng: &mut ChaCha8Rng) -> QStructure {
    let base = if rng.gen_bool(0.5) {
        f1_plus_f2()
    } else {
        contractible_piece(1, &[0], "a").direct_sum(&loday_piece(1, "b")).unwrap()
    };
    let unit = rng.gen_bool(0.5);
    let f = random_morphism_maps(rng, base.space(), 3, unit);
    transport(&base, &f, 4).unwrap().0
}

#[test]
fn higher_arities_use_the_formula() {
    let mut rng = rng(66);
    for _ in 0..3 {
        let s = entangled(&mut rng);
        let mm = minimal_model(&s, 4).unwrap();
        assert_eq!(mm.steps, vec![(2, StepMethod::Formula), (3, StepMethod::Formula), (4, StepMethod::Formula)]);
        assert!(check_morphism(&mm.iso, 4).unwrap().holds);
    }
}

#[test]
fn linear_solve_reaches_the_same_targets() {
    let mut rng = rng(67);
    for _ in 0..3 {
        let s = entangled(&mut rng);
        let v = s.space().clone();
        let (split, h) = split_complex(&v, &s.at(1)).unwrap();
        let t = transfer_step(&s, &build_f2(&s, &split, &h).unwrap()).unwrap();
        let solved = solve_correction(&s, 2, &t.at(2)).unwrap();
        let seq = MapSequence::from_maps(v.clone(), v.zero_degree(), vec![MultiMap::identity(v.clone()), solved]).unwrap();
        let moved = transport(&s, &seq, 4).unwrap().0;
        assert_eq!(moved.at(2), t.at(2));

        let f3 = correction_candidate(&t.at(3), &split, &h).unwrap();
        let seq = MapSequence::from_maps(v.clone(), v.zero_degree(), vec![MultiMap::identity(v.clone()), f3]).unwrap();
        let want = transport(&t, &seq, 4).unwrap().0.at(3);
        let solved = solve_correction(&t, 3, &want).unwrap();
        let seq = MapSequence::from_maps(v.clone(), v.zero_degree(), vec![MultiMap::identity(v.clone()), solved]).unwrap();
        assert_eq!(transport(&t, &seq, 4).unwrap().0.at(3), want);
    }
}
