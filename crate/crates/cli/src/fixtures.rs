//! The bundled example files, each checked by its validator before it is
//! written.

use std::path::Path;

use loday_core::coalgebra::check_dual_leibniz;
use loday_core::fixtures as fx;
use loday_core::graded::{Degree, LinComb};
use loday_core::homotopy::quasi_inverse;
use loday_core::jacobi::{check_jacobi_structure, dual_numbers, AlphaAntisymOp, StructureKind};
use loday_core::structures::{check_loday, check_morphism, is_quasi_isomorphism, LodInftyMorphism};
use loday_core::{Error, QMap, Rat, Result};
use serde_json::{json, Value};

use crate::io::{self, Document};

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("bundled fixture fails its validator: {what}")))
    }
}

fn one() -> Rat {
    Rat::from_integer(1.into())
}

/// The projection `F1 ⊕ F2 -> F1`.
pub fn projection() -> Result<LodInftyMorphism<Rat>> {
    let src = fx::f1_plus_f2::<Rat>();
    let dst = fx::f1_dglod::<Rat>();
    let mut f1 = QMap::zero(src.space().clone(), dst.space().clone(), 1, Degree::zero(1));
    for name in ["x", "y"] {
        let i = src.space().index_of(name)?;
        f1.set_entry(vec![i], LinComb::single(dst.space().index_of(name)?, one()))?;
    }
    LodInftyMorphism::from_maps(src, dst, vec![f1])
}

/// `{1, ε} = ε = -{ε, 1}` on the dual numbers: Jacobi, not Poisson.
pub fn dual_numbers_jacobi() -> Result<AlphaAntisymOp<Rat>> {
    let alg = dual_numbers::<Rat>(Degree::zero(1))?;
    let mut m = QMap::zero_endo(alg.space().clone(), 2, Degree::zero(1));
    m.set_entry(vec![0, 1], LinComb::single(1, one()))?;
    m.set_entry(vec![1, 0], LinComb::single(1, -one()))?;
    AlphaAntisymOp::map(Degree::zero(1), m)
}

/// Every fixture as `(file name, validator, contents)`.
pub fn all() -> Result<Vec<(&'static str, &'static str, Value)>> {
    let mut out = Vec::new();

    let f1 = fx::f1::<Rat>();
    require(check_loday(&f1)?.holds, "f1")?;
    out.push(("f1.json", "check-loday passes", Document::map(f1.clone()).to_json()));

    let broken = fx::f1_broken::<Rat>();
    require(!check_loday(&broken)?.holds, "f1-broken")?;
    out.push(("f1-broken.json", "check-loday fails", Document::map(broken).to_json()));

    let f2 = fx::f2::<Rat>();
    require(f2.check().holds && f2.check_coalgebraic()?, "f2")?;
    out.push(("f2.json", "check-lod-infinity passes", Document::structure(&f2).to_json()));

    let f3 = fx::f3_space();
    require(check_dual_leibniz::<Rat>(&f3, 4), "f3")?;
    out.push(("f3.json", "dual Leibniz coalgebra on words of length <= 4", Document::space(f3).to_json()));

    let sum = fx::f1_plus_f2::<Rat>();
    require(sum.check().holds, "f1-plus-f2")?;
    out.push(("f1-plus-f2.json", "check-lod-infinity passes", Document::structure(&sum).to_json()));

    let p = projection()?;
    require(check_morphism(&p, 4)?.holds && is_quasi_isomorphism(&p), "projection")?;
    require(quasi_inverse(&p, 3).is_ok(), "projection has a quasi-inverse")?;
    out.push(("projection.json", "morphism-check passes, quasi-isomorphism", io::morphism_to_json(&p)));

    let alg = dual_numbers::<Rat>(Degree::zero(1))?;
    out.push(("dual-numbers.json", "graded commutative algebra", io::algebra_to_json(&alg, None)));

    let pi = dual_numbers_jacobi()?;
    let jac = check_jacobi_structure(&alg, &pi, StructureKind::Jacobi)?.holds;
    let poi = check_jacobi_structure(&alg, &pi, StructureKind::Poisson)?.holds;
    require(jac && !poi, "dual-numbers-jacobi")?;
    out.push(("dual-numbers-jacobi.json", "Jacobi, not Poisson", io::algebra_to_json(&alg, Some(&pi))));

    let space = fx::f1_space();
    let zero = QMap::zero_endo(space.clone(), 2, Degree::zero(1));
    let deformation = json!({
        "space": io::space_to_json(&space),
        "kind": "loday",
        "base": io::map_to_json(&f1),
        "terms": vec![io::map_to_json(&zero); 3],
    });
    out.push(("f1-deformation.json", "constant deformation of order 3", deformation));

    let chi = QMap::identity(space.clone());
    out.push(("f1-chi.json", "gauge series χ_1 = id", json!({"chi": [io::map_to_json(&chi)]})));

    Ok(out)
}

/// Writes every fixture into `dir`, returning `(file, validator)` pairs.
pub fn write_all(dir: &Path) -> Result<Vec<(String, String)>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for (name, validator, v) in all()? {
        io::write_json(&dir.join(name), &v)?;
        out.push((name.to_string(), validator.to_string()));
    }
    Ok(out)
}
