mod common;

use common::*;
use loday_core::cohomology::*;
use loday_core::fixtures;
use loday_core::graded::{Degree, LinComb, SpaceRef};
use loday_core::multilinear::{stem_bracket, Cochain, DegreeMinusOneElement, MapSequence, MultiMap};
use loday_core::structures::{linear_cohomology, LodInftyStructure};
use loday_core::{Error, QMap, Rat};
use num_traits::Zero;

fn elem(space: &SpaceRef, i: usize) -> Cochain<Rat> {
    Cochain::Element(DegreeMinusOneElement::new(space.clone(), space.degree(i).clone(), LinComb::single(i, q(1))).unwrap())
}

#[test]
fn coboundary_examples() {
    let pi: QMap = fixtures::f1();
    let v = pi.domain().clone();
    let (x, y) = (0, 1);
    let dx = loday_coboundary(&pi, &elem(&v, x)).unwrap();
    let dx = dx.as_map().unwrap();
    assert_eq!(dx.eval_basis(&[x]).cloned().unwrap(), LinComb::single(y, q(1)));
    assert!(dx.eval_basis(&[y]).is_none());

    let id = Cochain::Map(MultiMap::identity(v.clone()));
    let did = loday_coboundary(&pi, &id).unwrap();
    assert_eq!(did.as_map().unwrap().eval_basis(&[x, x]).cloned().unwrap(), LinComb::single(y, q(-1)));
    assert_eq!(did.as_map().unwrap().nnz(), 1);
}

#[test]
fn explicit_coboundary_is_the_stem_bracket() {
    let mut r = rng(17);
    let mut fixtures_list: Vec<QMap> = vec![fixtures::f1(), sl2()];
    for k in 0..8 {
        fixtures_list.push(random_loday(&mut r, 1 + k % 2));
    }
    for pi in fixtures_list {
        let v = pi.domain().clone();
        let p = Cochain::Map(pi.clone());
        for i in 0..v.dim() {
            let e = elem(&v, i);
            assert_eq!(loday_coboundary(&pi, &e).unwrap(), stem_bracket(&p, &e).unwrap());
        }
        for _ in 0..6 {
            let b = random_homogeneous(&mut r, &v, 2);
            let b = Cochain::Map(b);
            assert_eq!(loday_coboundary(&pi, &b).unwrap(), stem_bracket(&p, &b).unwrap());
        }
    }
}

#[test]
fn loday_coboundary_squares_to_zero() {
    for pi in [fixtures::f1::<Rat>(), sl2()] {
        let v = pi.domain().clone();
        let max = if v.dim() == 2 { 3 } else { 1 };
        for a in -1..=max {
            let b = CellBasis::new(&v, &Cell::new(v.zero_degree(), a));
            for k in 0..b.dim() {
                let d1 = loday_coboundary(&pi, &b.element(k)).unwrap();
                assert!(loday_coboundary(&pi, &d1).unwrap().is_zero());
            }
        }
    }
    let bad: QMap = fixtures::f1_broken();
    let v = bad.domain().clone();
    let d1 = loday_coboundary(&bad, &elem(&v, 0)).unwrap();
    assert!(!loday_coboundary(&bad, &d1).unwrap().is_zero());
}

// Dense oracle: matrices assembled from the explicit formula on an
// independently enumerated basis, ranks by plain Gaussian elimination.
fn oracle_basis(dim: usize, a: i64) -> Vec<(Vec<usize>, usize)> {
    let len = (a + 1) as usize;
    let mut out = Vec::new();
    let total = dim.pow(len as u32);
    for code in 0..total {
        let mut t = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            t.push(c % dim);
            c /= dim;
        }
        t.reverse();
        for j in 0..dim {
            out.push((t.clone(), j));
        }
    }
    out
}

fn oracle_cochain(space: &SpaceRef, key: &(Vec<usize>, usize)) -> Cochain<Rat> {
    if key.0.is_empty() {
        return elem(space, key.1);
    }
    let mut m = MultiMap::zero_endo(space.clone(), key.0.len(), space.zero_degree());
    m.set_entry(key.0.clone(), LinComb::single(key.1, q(1))).unwrap();
    Cochain::Map(m)
}

fn oracle_coords(c: &Cochain<Rat>, basis: &[(Vec<usize>, usize)]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); basis.len()];
    match c {
        Cochain::Element(e) => {
            for (j, x) in e.value.iter() {
                out[basis.iter().position(|k| k.0.is_empty() && k.1 == *j).unwrap()] = x.clone();
            }
        }
        Cochain::Map(m) => {
            for (t, v) in m.entries() {
                for (j, x) in v.iter() {
                    out[basis.iter().position(|k| &k.0 == t && k.1 == *j).unwrap()] = x.clone();
                }
            }
        }
        Cochain::Null { .. } => {}
    }
    out
}

fn oracle_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / pivot.clone();
                for k in 0..cols {
                    let sub = rows[rank][k].clone() * f.clone();
                    rows[i][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_rank_of_d(pi: &QMap, a: i64) -> usize {
    let v = pi.domain().clone();
    let src = oracle_basis(v.dim(), a);
    let dst = oracle_basis(v.dim(), a + 1);
    let columns: Vec<Vec<Rat>> =
        src.iter().map(|k| oracle_coords(&loday_coboundary(pi, &oracle_cochain(&v, k)).unwrap(), &dst)).collect();
    oracle_rank(columns)
}

#[test]
fn f1_table_matches_dense_oracle() {
    let pi: QMap = fixtures::f1();
    let window = CochainWindow::new(vec![Degree::zero(1)], -1, 2);
    let table = cohomology_table(&StemDifferential::loday(pi.clone()), &window).unwrap();
    for cell in &table.cells {
        let a = cell.label.arity_index;
        let dim = 2usize.pow((a + 2) as u32);
        let out = oracle_rank_of_d(&pi, a);
        let inn = if a == -1 { 0 } else { oracle_rank_of_d(&pi, a - 1) };
        assert_eq!(cell.dim_cochains, dim);
        assert_eq!(cell.dim_cocycles, dim - out);
        assert_eq!(cell.dim_coboundaries, inn);
        assert_eq!(cell.dim_h, dim - out - inn);
    }
    let dims: Vec<usize> = table.cells.iter().map(|c| c.dim_h).collect();
    assert_eq!(dims, vec![1, 1, 1, 1]);
}

#[test]
fn zero_bracket_and_contractible_tables() {
    let v = fixtures::f3_space();
    let zero: QMap = MultiMap::zero_endo(v.clone(), 2, v.zero_degree());
    let w = CochainWindow::new(vec![v.zero_degree(), Degree::new(vec![1, -1])], 0, 2);
    let t = cohomology_table(&StemDifferential::loday(zero), &w).unwrap();
    assert!(t.cells.iter().all(|c| c.dim_h == c.dim_cochains));

    let f2 = fixtures::f2::<Rat>();
    assert!(linear_cohomology(f2.space(), &f2.at(1)).iter().all(|h| h.dim() == 0));

    let pi: QMap = fixtures::f1();
    let bad = CochainWindow::new(vec![Degree::zero(1)], -2, 0);
    assert!(matches!(cohomology_table(&StemDifferential::loday(pi), &bad), Err(Error::Input(_))));
}

#[test]
fn lod_infty_coboundary_properties() {
    let mut r = rng(4);
    for round in 0..6 {
        let base = random_base(&mut r, 1 + round % 2);
        let f = random_morphism_maps(&mut r, base.space(), 2, false);
        let (pi, _) = loday_core::structures::transport(&base, &f, 3).unwrap();
        let pi = LodInftyStructure::new(pi.maps().truncated(3), 3).unwrap();
        let v = pi.space().clone();
        for k in 1..=3usize {
            let w = reachable_weight(&mut r, &v, k);
            let base_w = &w + &((k as i64 - 1) * &v.e1());
            let m = random_map(&mut r, &v, k, &w, 0.5);
            let rho = MapSequence::from_maps(v.clone(), base_w, vec![m]).unwrap();
            let d1 = lod_infty_coboundary(&pi, &rho).unwrap();
            assert!(preserves_filtration(&pi, &rho, k).unwrap());
            // d² vanishes in every arity that only involves certified maps.
            let d2 = lod_infty_coboundary(&pi, &d1.truncated(3)).unwrap();
            for a in 1..=3 {
                assert!(d2.at(a).is_zero(), "round {round} k {k} arity {a}");
            }
        }
        let self_bracket = lod_infty_coboundary(&pi, pi.maps()).unwrap();
        assert!((1..=3).all(|a| self_bracket.at(a).is_zero()));
    }
    let f2 = fixtures::f2::<Rat>();
    let rho = MapSequence::from_maps(f2.space().clone(), f2.space().e1(), vec![f2.at(1)]).unwrap();
    assert!(matches!(preserves_filtration(&f2, &rho, 2), Err(Error::Input(_))));
}

#[test]
fn antisymmetric_sequences_are_closed() {
    let mut r = rng(9);
    for _ in 0..10 {
        let v = random_space(&mut r, 1, 3);
        let a = loday_core::multilinear::antisymmetrize(&random_homogeneous(&mut r, &v, 2));
        let b = loday_core::multilinear::antisymmetrize(&random_homogeneous(&mut r, &v, 2));
        let sa = MapSequence::from_maps(v.clone(), a.weight() + &((a.arity() as i64 - 1) * &v.e1()), vec![a]).unwrap();
        let sb = MapSequence::from_maps(v.clone(), b.weight() + &((b.arity() as i64 - 1) * &v.e1()), vec![b]).unwrap();
        assert!(is_antisymmetric_sequence(&sa) && is_antisymmetric_sequence(&sb));
        let c = loday_core::multilinear::sequence_bracket(&sa, &sb).unwrap();
        assert!(is_antisymmetric_sequence(&c));
    }
}

fn loday_deformation(pi: &QMap, terms: Vec<QMap>) -> FormalDeformation<Cochain<Rat>> {
    FormalDeformation::new(Cochain::Map(pi.clone()), terms.into_iter().map(Cochain::Map).collect())
}

fn random_chi(r: &mut rand_chacha::ChaCha8Rng, v: &SpaceRef, order: usize) -> Vec<Cochain<Rat>> {
    let mut chi = vec![Cochain::zero(v.clone(), v.zero_degree(), 0)];
    for _ in 1..=order {
        chi.push(Cochain::Map(random_map(r, v, 1, &v.zero_degree(), 0.5)));
    }
    chi
}

#[test]
fn deformation_basics() {
    let pi: QMap = fixtures::f1();
    let v = pi.domain().clone();
    let g = StemAlgebra { space: v.clone() };
    let zero = MultiMap::zero_endo(v.clone(), 2, v.zero_degree());
    let constant = loday_deformation(&pi, vec![zero.clone(), zero.clone(), zero.clone()]);
    assert!(deformation_check(&g, &constant).unwrap().holds);

    // Order one holds iff the first coefficient is a cocycle.
    let b = CellBasis::new(&v, &Cell::new(v.zero_degree(), 1));
    for k in 0..b.dim() {
        let c = b.element::<Rat>(k);
        let d = FormalDeformation::new(Cochain::Map(pi.clone()), vec![c.clone()]);
        let cocycle = loday_coboundary(&pi, &c).unwrap().is_zero();
        assert_eq!(deformation_check(&g, &d).unwrap().holds, cocycle);
    }

    let wrong = FormalDeformation::new(Cochain::Map(pi.clone()), vec![Cochain::Map(MultiMap::identity(v.clone()))]);
    assert!(matches!(deformation_check(&g, &wrong), Err(Error::Input(_))));

    // Gauge by zero is the identity; order one adds {χ_1, π}.
    let mut r = rng(2);
    let d = loday_deformation(&pi, vec![zero.clone(), zero.clone()]);
    let none = vec![Cochain::zero(v.clone(), v.zero_degree(), 0); 3];
    assert_eq!(gauge_action(&g, &d, &none).unwrap(), d);
    let chi = random_chi(&mut r, &v, 2);
    let out = gauge_action(&g, &d, &chi).unwrap();
    let expect = stem_bracket(&chi[1], &d.base).unwrap();
    assert_eq!(out.terms[0], expect);
    let bad = vec![Cochain::Map(MultiMap::identity(v.clone()))];
    assert!(matches!(gauge_action(&g, &d, &bad), Err(Error::Input(_))));
}

#[test]
fn gauge_orbits_are_deformations_and_unobstructed() {
    let mut r = rng(12);
    for pi in [fixtures::f1::<Rat>(), sl2()] {
        let v = pi.domain().clone();
        let g = StemAlgebra { space: v.clone() };
        for _ in 0..3 {
            let zero = MultiMap::zero_endo(v.clone(), 2, v.zero_degree());
            let d = loday_deformation(&pi, vec![zero.clone(), zero.clone(), zero.clone()]);
            let chi = random_chi(&mut r, &v, 3);
            let out = gauge_action(&g, &d, &chi).unwrap();
            assert!(deformation_check(&g, &out).unwrap().holds);
            // Truncate at each order and look at the next obstruction.
            for q in 1..=2 {
                let trunc = FormalDeformation::new(out.base.clone(), out.terms[..q].to_vec());
                let ob = obstruction_class(&g, &trunc).unwrap();
                assert!(ob.is_cocycle && ob.extendable());
                let mut next = trunc.clone();
                next.terms.push(ob.extension.clone().unwrap());
                assert!(deformation_check(&g, &next).unwrap().holds);
            }
        }
    }
}

#[test]
fn gauge_inverse_series_restores_the_deformation() {
    let pi: QMap = fixtures::f1();
    let v = pi.domain().clone();
    let g = StemAlgebra { space: v.clone() };
    let mut r = rng(31);
    let zero = MultiMap::zero_endo(v.clone(), 2, v.zero_degree());
    let d0 = loday_deformation(&pi, vec![zero.clone(), zero.clone(), zero]);
    let d = gauge_action(&g, &d0, &random_chi(&mut r, &v, 3)).unwrap();
    // χ with a single order-1 term is inverted by its negative.
    let mut chi = vec![Cochain::zero(v.clone(), v.zero_degree(), 0)];
    chi.push(Cochain::Map(random_map(&mut r, &v, 1, &v.zero_degree(), 0.6)));
    let there = gauge_action(&g, &d, &chi).unwrap();
    let neg: Vec<_> = chi.iter().map(|c| c.scale(&q(-1))).collect();
    assert_eq!(gauge_action(&g, &there, &neg).unwrap(), d);
}

#[test]
fn straightening_and_obstructions() {
    let pi = sl2();
    let v = pi.domain().clone();
    let g = StemAlgebra { space: v.clone() };
    let table = cohomology_table(&StemDifferential::loday(pi.clone()), &CochainWindow::new(vec![v.zero_degree()], 0, 1)).unwrap();
    assert_eq!(table.get(&Cell::new(v.zero_degree(), 1)).unwrap().dim_h, 0);
    let mut r = rng(44);
    let zero = MultiMap::zero_endo(v.clone(), 2, v.zero_degree());
    let d0 = loday_deformation(&pi, vec![zero.clone(), zero.clone(), zero]);
    let d = gauge_action(&g, &d0, &random_chi(&mut r, &v, 3)).unwrap();
    assert!(d.terms.iter().any(|t| !t.is_zero()));
    let st = straighten(&g, &d).unwrap();
    assert!(st.trivialized);
    assert!(deformation_check(&g, &st.result).unwrap().holds);

    // Infinitesimal classes: cocycles differing by a coboundary are equivalent.
    let chi = Cochain::Map(random_map(&mut r, &v, 1, &v.zero_degree(), 0.6));
    let p = Cochain::Map(pi.clone());
    let bd = stem_bracket(&p, &chi).unwrap();
    let z = Cochain::zero(v.clone(), v.zero_degree(), 1);
    assert!(first_order_equivalent(&g, &p, &bd, &z).unwrap());

    let f1: QMap = fixtures::f1();
    let fv = f1.domain().clone();
    let fg = StemAlgebra { space: fv.clone() };
    let fp = Cochain::Map(f1.clone());
    let b = CellBasis::new(&fv, &Cell::new(fv.zero_degree(), 1));
    let cocycles: Vec<Cochain<Rat>> =
        (0..b.dim()).map(|k| b.element(k)).filter(|c| loday_coboundary(&f1, c).unwrap().is_zero()).collect();
    let nontrivial: Vec<_> = cocycles
        .iter()
        .filter(|c| !first_order_equivalent(&fg, &fp, c, &Cochain::zero(fv.clone(), fv.zero_degree(), 1)).unwrap())
        .collect();
    assert!(!nontrivial.is_empty());

    // On the abelian structure every bilinear map is a cocycle and nothing
    // is a coboundary, so a non-Loday π_1 is obstructed.
    let abelian = Cochain::Map(MultiMap::zero_endo(fv.clone(), 2, fv.zero_degree()));
    let d = FormalDeformation::new(abelian, vec![Cochain::Map(fixtures::f1_broken::<Rat>())]);
    assert!(deformation_check(&fg, &d).unwrap().holds);
    let ob = obstruction_class(&fg, &d).unwrap();
    assert!(ob.is_cocycle && !ob.obstruction.is_zero() && !ob.extendable());
    let d = FormalDeformation::new(d.base.clone(), vec![Cochain::Map(f1.clone())]);
    assert!(obstruction_class(&fg, &d).unwrap().extendable());
    let broken = FormalDeformation::new(fp.clone(), vec![Cochain::Map(MultiMap::identity(fv.clone()))]);
    assert!(obstruction_class(&fg, &broken).is_err());
}

#[test]
fn lod_infty_deformations() {
    // Gauge transformations in the sequence algebra on F2 ⊕ F1.
    let s = fixtures::f1_plus_f2::<Rat>();
    let v = s.space().clone();
    let g = SequenceAlgebra { space: v.clone(), max_arity: 3 };
    let zero = MapSequence::new(v.clone(), v.e1());
    let d0 = FormalDeformation::new(s.maps().clone(), vec![zero.clone(), zero.clone()]);
    let mut r = rng(6);
    let mut chi = vec![MapSequence::new(v.clone(), v.zero_degree())];
    for _ in 0..2 {
        let m1 = random_map(&mut r, &v, 1, &v.zero_degree(), 0.4);
        let m2 = random_map(&mut r, &v, 2, &(-&v.e1()), 0.4);
        chi.push(MapSequence::from_maps(v.clone(), v.zero_degree(), vec![m1, m2]).unwrap());
    }
    let d = gauge_action(&g, &d0, &chi).unwrap();
    assert!(deformation_check(&g, &d).unwrap().holds);
    let ob = obstruction_class(&g, &FormalDeformation::new(d.base.clone(), d.terms[..1].to_vec())).unwrap();
    assert!(ob.is_cocycle && ob.extendable());

    // F2 is contractible: every deformation straightens.
    let f2 = fixtures::f2::<Rat>();
    let v2 = f2.space().clone();
    let g2 = SequenceAlgebra { space: v2.clone(), max_arity: 3 };
    let z2 = MapSequence::new(v2.clone(), v2.e1());
    let d0 = FormalDeformation::new(f2.maps().clone(), vec![z2.clone(), z2.clone(), z2]);
    let mut chi = vec![MapSequence::new(v2.clone(), v2.zero_degree())];
    for _ in 0..3 {
        let m1 = random_map(&mut r, &v2, 1, &v2.zero_degree(), 0.7);
        let m2 = random_map(&mut r, &v2, 2, &(-&v2.e1()), 0.7);
        chi.push(MapSequence::from_maps(v2.clone(), v2.zero_degree(), vec![m1, m2]).unwrap());
    }
    let d = gauge_action(&g2, &d0, &chi).unwrap();
    assert!(deformation_check(&g2, &d).unwrap().holds);
    let st = straighten(&g2, &d).unwrap();
    assert!(st.trivialized);
}

#[test]
fn p_ary_structures() {
    let f1: QMap = fixtures::f1();
    assert!(check_p_ary(&f1, 2).unwrap());
    assert!(matches!(check_p_ary(&f1, 3), Err(Error::Input(_))));
    let (h, hbar, agree) = bidegree_correspondence(&f1, &[Degree::zero(1)], 0, 3).unwrap();
    assert!(agree);
    let plain = cohomology_table(&StemDifferential::loday(f1.clone()), &CochainWindow::new(vec![Degree::zero(1)], 0, 3)).unwrap();
    for c in &h.cells {
        if c.cell.arity_index >= 1 {
            assert_eq!(plain.get(&c.label).unwrap().dim_h, c.dim_h);
        }
    }
    assert!(!hbar.cells.is_empty());

    let v = fixtures::f1_space();
    let zero4: QMap = MultiMap::zero_endo(v.clone(), 4, v.zero_degree());
    assert!(check_p_ary(&zero4, 4).unwrap());
    let (h, _, agree) = bidegree_correspondence(&zero4, &[Degree::zero(1)], 0, 4).unwrap();
    assert!(agree);
    assert!(h.cells.iter().all(|c| c.dim_h == c.dim_cochains));

    // π_4(x,x,x,x) = y is a 4-ary Loday structure.
    let m = MultiMap::from_named(v.clone(), v.clone(), 4, v.zero_degree(), &[(&["x", "x", "x", "x"], &[(q(1), "y")])]).unwrap();
    assert!(check_p_ary(&m, 4).unwrap());
    let (_, _, agree) = bidegree_correspondence(&m, &[Degree::zero(1)], 0, 4).unwrap();
    assert!(agree);
}
