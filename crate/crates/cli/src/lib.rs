//! The `loday` command line tool.

pub mod fixtures;
pub mod io;
mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use loday_core::cohomology::{
    bidegree_correspondence, cohomology_table, deformation_check, gauge_action, lod_infty_coboundary,
    loday_coboundary, obstruction_class, CochainWindow, CohomologyReport, FormalDeformation, GradedLie,
    SequenceAlgebra, StemAlgebra, StemDifferential,
};
use loday_core::coalgebra::{coproduct, format_pair};
use loday_core::graded::{Degree, SpaceRef};
use loday_core::homotopy::{inverts_on_cohomology, minimal_model, quasi_inverse};
use loday_core::jacobi::{check_jacobi_structure, gm_bracket, StructureKind};
use loday_core::multilinear::{sequence_bracket, stem_bracket, Cochain};
use loday_core::structures::{
    check_loday, check_morphism, conjugate, invert_morphism, LodInftyStructure, DEFAULT_MAX_ARITY,
};
use loday_core::{Error, QSequence, Rat, Result};
use serde_json::{json, Value};

use io::{Document, Payload};
use report::{describe_cochain, describe_sequence, describe_value, names};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Jacobi,
    Poisson,
}

#[derive(Debug, Parser)]
#[command(name = "loday", version, about = "Exact computations with graded Loday and Loday infinity algebras")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the computed object (if any) to this file.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Highest arity considered for infinity structures and morphisms.
    #[arg(long, default_value_t = DEFAULT_MAX_ARITY, global = true)]
    pub max_arity: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the graded Jacobi identity of a bilinear bracket.
    CheckLoday { file: PathBuf },
    /// Check that a sequence of maps is a Loday infinity structure.
    CheckLodInfinity { file: PathBuf },
    /// Stem bracket of two cochains.
    Bracket { a: PathBuf, b: PathBuf },
    /// Bracket of two map sequences.
    SequenceBracket { a: PathBuf, b: PathBuf },
    /// Coboundary of a cochain (Loday bracket) or sequence (infinity structure).
    Coboundary { structure: PathBuf, cochain: PathBuf },
    /// Cohomology dimensions in a window of bidegrees.
    Cohomology {
        file: PathBuf,
        /// Weights, `;`-separated, components `,`-separated (for n = 1 a plain list).
        #[arg(long, allow_hyphen_values = true)]
        weight_box: String,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        arity_min: i64,
        #[arg(long, default_value_t = 3)]
        arity_max: i64,
    },
    /// Check a formal deformation order by order.
    DeformCheck {
        file: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Obstruction to extending a formal deformation by one order.
    Obstruction {
        file: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Apply a gauge series to a formal deformation.
    Gauge {
        file: PathBuf,
        #[arg(long)]
        chi: PathBuf,
    },
    /// Check the morphism equations.
    MorphismCheck { file: PathBuf },
    /// Invert a morphism with bijective linear part.
    MorphismInvert { file: PathBuf },
    /// Conjugate a structure by a sequence with identity linear part.
    Conjugate { structure: PathBuf, sequence: PathBuf },
    /// Minimal model: split into a minimal and a contractible part.
    MinimalModel { file: PathBuf },
    /// Quasi-inverse of a quasi-isomorphism.
    QuasiInverse { file: PathBuf },
    /// Grabowski-Marmo bracket of two operators on a graded algebra.
    GmBracket { a: PathBuf, b: PathBuf },
    /// Check a graded Jacobi or Poisson structure.
    CheckJacobi {
        #[arg(long, value_enum, default_value = "jacobi")]
        kind: Kind,
        file: PathBuf,
    },
    /// Coproduct of a basis word in the tensor coalgebra.
    Coproduct {
        /// A space document (any document with a "space").
        space: PathBuf,
        word: Vec<String>,
    },
    /// Write the bundled fixtures.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

/// What a command produced.
pub struct Outcome {
    pub verified: bool,
    pub report: Value,
    pub text: String,
    /// The computed object, written by `-o`.
    pub artifact: Option<Value>,
}

impl Outcome {
    fn ok(report: Value, text: String) -> Self {
        Outcome { verified: true, report, text, artifact: None }
    }

    fn check(verified: bool, report: Value, text: String) -> Self {
        Outcome { verified, report, text, artifact: None }
    }

    fn with_artifact(mut self, a: Value) -> Self {
        self.artifact = Some(a);
        self
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

fn load(path: &Path) -> Result<Document> {
    Document::from_json(&io::read_json(path)?)
}

fn structure(path: &Path, max_arity: usize) -> Result<LodInftyStructure<Rat>> {
    load(path)?.as_structure(max_arity)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "verified"
    } else {
        "FAILED"
    }
}

/// Parses `"0;1"`, `"1,0;0,1"`, or for `n = 1` also `"-1,0,1"`.
pub fn parse_weight_box(s: &str, n: usize) -> Result<Vec<Degree>> {
    let groups: Vec<&str> =
        if n == 1 && !s.contains(';') { s.split(',').collect() } else { s.split(';').collect() };
    groups
        .iter()
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            let comps = g
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Input(format!("bad weight \"{g}\""))))
                .collect::<Result<Vec<_>>>()?;
            if comps.len() != n {
                return bad(format!("weight \"{g}\" needs {n} components"));
            }
            Ok(Degree::new(comps))
        })
        .collect()
}

fn table_json(t: &CohomologyReport) -> Value {
    Value::Array(
        t.cells
            .iter()
            .map(|c| {
                json!({
                    "weight": io::degree_to_json(&c.label.weight),
                    "arity_index": c.label.arity_index,
                    "cochains": c.dim_cochains,
                    "cocycles": c.dim_cocycles,
                    "coboundaries": c.dim_coboundaries,
                    "h": c.dim_h,
                })
            })
            .collect(),
    )
}

fn table_text(t: &CohomologyReport) -> String {
    let mut out = format!("{:<16} {:>8} {:>8} {:>12} {:>4}\n", "cell", "cochains", "cocycles", "coboundaries", "H");
    for c in &t.cells {
        out.push_str(&format!(
            "{:<16} {:>8} {:>8} {:>12} {:>4}\n",
            c.label.to_string(),
            c.dim_cochains,
            c.dim_cocycles,
            c.dim_coboundaries,
            c.dim_h
        ));
    }
    out
}

/// A deformation file: `{"space", "kind": "loday" | "lod-infinity", "base", "terms"}`.
enum Deformation {
    Loday(StemAlgebra, FormalDeformation<Cochain<Rat>>),
    Infinity(SequenceAlgebra, FormalDeformation<QSequence>),
}

fn parse_elements<E>(v: &Value, f: impl Fn(&Value) -> Result<E>) -> Result<Vec<E>> {
    v.as_array().ok_or_else(|| Error::Input("expected an array".into()))?.iter().map(f).collect()
}

fn cochain_from(v: &Value, space: &SpaceRef) -> Result<Cochain<Rat>> {
    if v.get("entries").is_some() {
        Ok(Cochain::Map(io::map_from_json(v, space, space)?))
    } else {
        Ok(Cochain::Element(io::element_from_json(v, space)?))
    }
}

fn cochain_json(c: &Cochain<Rat>) -> Value {
    match c {
        Cochain::Map(m) => io::map_to_json(m),
        Cochain::Element(e) => io::element_to_json(e),
        Cochain::Null { weight, arity_index, .. } => {
            json!({"weight": io::degree_to_json(weight), "arity_index": arity_index, "entries": []})
        }
    }
}

fn truncate<E>(mut terms: Vec<E>, order: Option<usize>) -> Result<Vec<E>> {
    if let Some(q) = order {
        if q > terms.len() {
            return bad(format!("the deformation has order {}, asked for {q}", terms.len()));
        }
        terms.truncate(q);
    }
    Ok(terms)
}

fn load_deformation(path: &Path, max_arity: usize, order: Option<usize>) -> Result<Deformation> {
    let v = io::read_json(path)?;
    let space = io::space_from_json(v.get("space").ok_or_else(|| Error::Input("missing \"space\"".into()))?)?;
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("loday");
    let base = v.get("base").ok_or_else(|| Error::Input("missing \"base\"".into()))?;
    let terms = v.get("terms").cloned().unwrap_or(json!([]));
    match kind {
        "loday" => {
            let base = cochain_from(base, &space)?;
            let terms = truncate(parse_elements(&terms, |t| cochain_from(t, &space))?, order)?;
            Ok(Deformation::Loday(StemAlgebra { space }, FormalDeformation::new(base, terms)))
        }
        "lod-infinity" => {
            let base = io::sequence_from_json(base, &space, &space)?;
            let terms = truncate(parse_elements(&terms, |t| io::sequence_from_json(t, &space, &space))?, order)?;
            Ok(Deformation::Infinity(SequenceAlgebra { space, max_arity }, FormalDeformation::new(base, terms)))
        }
        other => bad(format!("unknown deformation kind \"{other}\"")),
    }
}

fn deformation_json<E>(space: &SpaceRef, kind: &str, d: &FormalDeformation<E>, f: impl Fn(&E) -> Value) -> Value {
    json!({
        "space": io::space_to_json(space),
        "kind": kind,
        "base": f(&d.base),
        "terms": d.terms.iter().map(&f).collect::<Vec<_>>(),
    })
}

fn deform_check_with<G: GradedLie<Rat>>(g: &G, d: &FormalDeformation<G::Elem>, show: impl Fn(&G::Elem) -> String) -> Result<Outcome> {
    let r = deformation_check(g, d)?;
    let text = match r.failing_order {
        None => format!("deformation of order {}: verified\n", d.order()),
        Some(p) => format!(
            "deformation fails at order {p}; residual:\n{}",
            show(r.residual.as_ref().expect("a failing order has a residual"))
        ),
    };
    Ok(Outcome::check(r.holds, json!({"holds": r.holds, "order": d.order(), "failing_order": r.failing_order}), text))
}

fn obstruction_with<G: GradedLie<Rat>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
    show: impl Fn(&G::Elem) -> String,
    to_json: impl Fn(&G::Elem) -> Value,
) -> Result<Outcome> {
    let r = obstruction_class(g, d)?;
    let ext = r.extendable();
    let mut text = format!(
        "obstruction at order {}: cocycle {}, {}\n",
        d.order() + 1,
        r.is_cocycle,
        if ext { "coboundary (extendable)" } else { "not a coboundary" }
    );
    text.push_str(&show(&r.obstruction));
    let report = json!({
        "order": d.order() + 1,
        "is_cocycle": r.is_cocycle,
        "extendable": ext,
        "obstruction": to_json(&r.obstruction),
        "extension": r.extension.as_ref().map(&to_json),
    });
    Ok(Outcome::check(ext && r.is_cocycle, report, text))
}

fn gauge_with<G: GradedLie<Rat>>(
    g: &G,
    d: &FormalDeformation<G::Elem>,
    chi: Vec<G::Elem>,
    kind: &str,
    space: &SpaceRef,
    show: impl Fn(&G::Elem) -> String,
    to_json: impl Fn(&G::Elem) -> Value,
) -> Result<Outcome> {
    let mut series = vec![g.zero(&g.zero_degree())];
    series.extend(chi);
    let out = gauge_action(g, d, &series)?;
    let check = deformation_check(g, &out)?;
    let mut text = format!("gauged deformation of order {} ({})\n", out.order(), verdict(check.holds));
    for p in 0..=out.order() {
        text.push_str(&format!("order {p}:\n{}", show(out.coefficient(p))));
    }
    let doc = deformation_json(space, kind, &out, &to_json);
    Ok(Outcome::check(check.holds, json!({"holds": check.holds, "deformation": doc.clone()}), text).with_artifact(doc))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let max = cli.max_arity;
    match &cli.command {
        Command::CheckLoday { file } => {
            let doc = load(file)?;
            let pi = doc.as_map()?;
            let r = check_loday(pi)?;
            let space = pi.domain();
            let failures: Vec<Value> = r
                .failures
                .iter()
                .map(|(t, v)| json!({"args": names(space, t), "residual": io::value_to_json(space, v)}))
                .collect();
            let mut text = format!("graded Jacobi identity: {}\n", verdict(r.holds));
            for (t, v) in &r.failures {
                text.push_str(&format!("residual at ({}): {}\n", names(space, t).join(", "), describe_value(space, v)));
            }
            Ok(Outcome::check(r.holds, json!({"holds": r.holds, "failures": failures}), text))
        }
        Command::CheckLodInfinity { file } => {
            let pi = structure(file, max)?;
            let r = pi.check();
            let coalg = pi.check_coalgebraic()?;
            let space = pi.space();
            let mut text = format!("Loday infinity relations up to arity {max}: {}\n", verdict(r.holds));
            text.push_str(&format!("codifferential check: {}\n", verdict(coalg)));
            if let (Some(p), Some(t), Some(v)) = (r.failing_p, &r.failing_tuple, &r.residual) {
                text.push_str(&format!(
                    "relation {p} fails at ({}): {}\n",
                    names(space, t).join(", "),
                    describe_value(space, v)
                ));
            }
            let report = json!({
                "holds": r.holds,
                "codifferential": coalg,
                "failing_p": r.failing_p,
                "failing_args": r.failing_tuple.as_ref().map(|t| names(space, t)),
                "residual": r.residual.as_ref().map(|v| io::value_to_json(space, v)),
            });
            Ok(Outcome::check(r.holds && coalg, report, text))
        }
        Command::Bracket { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let c = stem_bracket(a.as_cochain()?, b.as_cochain()?)?;
            let doc = Document::cochain(c.clone()).to_json();
            Ok(Outcome::ok(json!({"result": doc.clone()}), describe_cochain(&c)).with_artifact(doc))
        }
        Command::SequenceBracket { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let s = sequence_bracket(a.as_sequence()?, b.as_sequence()?)?.truncated(max);
            let doc = Document::sequence(s.clone()).to_json();
            Ok(Outcome::ok(json!({"result": doc.clone()}), describe_sequence(&s)).with_artifact(doc))
        }
        Command::Coboundary { structure: s, cochain } => {
            let (sd, cd) = (load(s)?, load(cochain)?);
            match (&sd.payload, &cd.payload) {
                (Payload::Cochain(Cochain::Map(pi)), Payload::Cochain(c)) => {
                    let out = loday_coboundary(pi, c)?;
                    let doc = Document::cochain(out.clone()).to_json();
                    Ok(Outcome::ok(json!({"result": doc.clone()}), describe_cochain(&out)).with_artifact(doc))
                }
                (Payload::Sequence(_), Payload::Sequence(rho)) => {
                    let pi = sd.as_structure(max)?;
                    let out = lod_infty_coboundary(&pi, rho)?.truncated(max);
                    let doc = Document::sequence(out.clone()).to_json();
                    Ok(Outcome::ok(json!({"result": doc.clone()}), describe_sequence(&out)).with_artifact(doc))
                }
                _ => bad("coboundary needs a map and a cochain, or a structure and a sequence"),
            }
        }
        Command::Cohomology { file, weight_box, arity_min, arity_max } => {
            let doc = load(file)?;
            let pi = doc.as_map()?;
            let weights = parse_weight_box(weight_box, doc.space.n())?;
            if pi.arity() == 2 {
                let r = check_loday(pi)?;
                if !r.holds {
                    return Ok(Outcome::check(false, json!({"holds": false}), "not a Loday bracket\n".into()));
                }
                let window = CochainWindow::new(weights, *arity_min, *arity_max);
                let t = cohomology_table(&StemDifferential::loday(pi.clone()), &window)?;
                Ok(Outcome::ok(json!({"table": table_json(&t)}), table_text(&t)))
            } else {
                let (h, hbar, agree) = bidegree_correspondence(pi, &weights, *arity_min.max(&0), *arity_max)?;
                let text = format!(
                    "[π, -] on the plain bigrading:\n{}sequence bracket on the shifted bigrading:\n{}tables agree: {agree}\n",
                    table_text(&h),
                    table_text(&hbar)
                );
                Ok(Outcome::check(
                    agree,
                    json!({"table": table_json(&h), "shifted_table": table_json(&hbar), "agree": agree}),
                    text,
                ))
            }
        }
        Command::DeformCheck { file, order } => match load_deformation(file, max, *order)? {
            Deformation::Loday(g, d) => deform_check_with(&g, &d, describe_cochain),
            Deformation::Infinity(g, d) => deform_check_with(&g, &d, describe_sequence),
        },
        Command::Obstruction { file, order } => match load_deformation(file, max, *order)? {
            Deformation::Loday(g, d) => obstruction_with(&g, &d, describe_cochain, cochain_json),
            Deformation::Infinity(g, d) => obstruction_with(&g, &d, describe_sequence, io::sequence_to_json),
        },
        Command::Gauge { file, chi } => {
            let cv = io::read_json(chi)?;
            let list = cv.get("chi").ok_or_else(|| Error::Input("missing \"chi\"".into()))?;
            match load_deformation(file, max, None)? {
                Deformation::Loday(g, d) => {
                    let space = g.space.clone();
                    let chi = parse_elements(list, |t| cochain_from(t, &space))?;
                    gauge_with(&g, &d, chi, "loday", &space, describe_cochain, cochain_json)
                }
                Deformation::Infinity(g, d) => {
                    let space = g.space.clone();
                    let chi = parse_elements(list, |t| io::sequence_from_json(t, &space, &space))?;
                    gauge_with(&g, &d, chi, "lod-infinity", &space, describe_sequence, io::sequence_to_json)
                }
            }
        }
        Command::MorphismCheck { file } => {
            let f = io::morphism_from_json(&io::read_json(file)?, max)?;
            let r = check_morphism(&f, max)?;
            let space = f.source.space();
            let mut text = format!("morphism equations up to arity {max}: {}\n", verdict(r.holds));
            text.push_str(&format!("coalgebra check Q'F = FQ: {}\n", verdict(r.holds_coalgebraic)));
            if let (Some(p), Some(t), Some(v)) = (r.failing_p, &r.failing_tuple, &r.residual) {
                text.push_str(&format!(
                    "arity {p} fails at ({}): {}\n",
                    names(space, t).join(", "),
                    describe_value(f.target.space(), v)
                ));
            }
            let report = json!({
                "holds": r.holds,
                "coalgebraic": r.holds_coalgebraic,
                "failing_p": r.failing_p,
                "failing_args": r.failing_tuple.as_ref().map(|t| names(space, t)),
                "residual": r.residual.as_ref().map(|v| io::value_to_json(f.target.space(), v)),
            });
            Ok(Outcome::check(r.holds && r.holds_coalgebraic, report, text))
        }
        Command::MorphismInvert { file } => {
            let f = io::morphism_from_json(&io::read_json(file)?, max)?;
            let g = invert_morphism(&f, max)?;
            let doc = io::morphism_to_json(&g);
            Ok(Outcome::ok(json!({"result": doc.clone()}), describe_sequence(g.maps())).with_artifact(doc))
        }
        Command::Conjugate { structure: s, sequence } => {
            let pi = structure(s, max)?;
            let f = load(sequence)?;
            let out = conjugate(&pi, f.as_sequence()?, max)?;
            let doc = Document::structure(&out).to_json();
            Ok(Outcome::ok(json!({"result": doc.clone()}), describe_sequence(out.maps())).with_artifact(doc))
        }
        Command::MinimalModel { file } => {
            let pi = structure(file, max)?;
            let m = minimal_model(&pi, max)?;
            let iso_ok = check_morphism(&m.iso, max)?.holds;
            let doc = json!({
                "minimal": Document::structure(&m.minimal).to_json(),
                "contractible": Document::structure(&m.contractible).to_json(),
                "iso": io::morphism_to_json(&m.iso),
            });
            let steps: Vec<Value> = m.steps.iter().map(|(k, s)| json!({"arity": k, "method": format!("{s:?}")})).collect();
            let text = format!(
                "minimal part ({} dims):\n{}contractible part ({} dims):\n{}isomorphism check: {}\n",
                m.minimal.space().dim(),
                describe_sequence(m.minimal.maps()),
                m.contractible.space().dim(),
                describe_sequence(m.contractible.maps()),
                verdict(iso_ok)
            );
            Ok(Outcome::check(iso_ok, json!({"model": doc.clone(), "steps": steps, "iso_verified": iso_ok}), text)
                .with_artifact(doc))
        }
        Command::QuasiInverse { file } => {
            let f = io::morphism_from_json(&io::read_json(file)?, max)?;
            let g = quasi_inverse(&f, max)?;
            let ok = check_morphism(&g, max)?.holds && inverts_on_cohomology(&f, &g);
            let doc = io::morphism_to_json(&g);
            let text = format!("quasi-inverse ({}):\n{}", verdict(ok), describe_sequence(g.maps()));
            Ok(Outcome::check(ok, json!({"verified": ok, "result": doc.clone()}), text).with_artifact(doc))
        }
        Command::GmBracket { a, b } => {
            let (alg, a) = io::algebra_from_json(&io::read_json(a)?)?;
            let (_, b) = io::algebra_from_json(&io::read_json(b)?)?;
            let (Some(a), Some(b)) = (a, b) else {
                return bad("both files need an operator under \"map\" or \"element\"");
            };
            let c = gm_bracket(&a, &b)?;
            let doc = io::algebra_to_json(&alg, Some(&c));
            Ok(Outcome::ok(json!({"result": doc.clone()}), describe_cochain(c.cochain())).with_artifact(doc))
        }
        Command::CheckJacobi { kind, file } => {
            let (alg, pi) = io::algebra_from_json(&io::read_json(file)?)?;
            let pi = pi.ok_or_else(|| Error::Input("missing bracket under \"map\"".into()))?;
            let k = match kind {
                Kind::Jacobi => StructureKind::Jacobi,
                Kind::Poisson => StructureKind::Poisson,
            };
            let r = check_jacobi_structure(&alg, &pi, k)?;
            let name = if k == StructureKind::Jacobi { "Jacobi" } else { "Poisson" };
            let mut text = format!("graded {name} structure: {}\n", verdict(r.holds));
            text.push_str(&format!("[π, π] = 0: {}\n", r.canonical));
            text.push_str(&format!("first order rule: {}\n", r.first_order));
            text.push_str(&format!("{{u, 1}} = 0: {}\n", r.unit_central));
            if let Some(t) = &r.failing_triple {
                text.push_str(&format!("first order rule fails at ({})\n", names(alg.space(), t).join(", ")));
            }
            let report = json!({
                "holds": r.holds,
                "canonical": r.canonical,
                "first_order": r.first_order,
                "unit_central": r.unit_central,
                "failing_args": r.failing_triple.as_ref().map(|t| names(alg.space(), t)),
            });
            Ok(Outcome::check(r.holds, report, text))
        }
        Command::Coproduct { space, word } => {
            let doc = load(space)?;
            let w = word.iter().map(|n| doc.space.index_of(n)).collect::<Result<Vec<_>>>()?;
            if w.is_empty() {
                return bad("give a nonempty word");
            }
            let d = coproduct::<Rat>(&doc.space, &w);
            let terms: Vec<Value> = d
                .iter()
                .map(|((l, r), c)| json!({"coeff": io::rational_to_json(c), "left": names(&doc.space, l), "right": names(&doc.space, r)}))
                .collect();
            Ok(Outcome::ok(json!({"terms": terms}), format_pair(&doc.space, &d)))
        }
        Command::Fixtures { dir } => {
            let written = fixtures::write_all(dir)?;
            let text = written.iter().map(|(f, v)| format!("{f}: {v}\n")).collect::<String>();
            let report = Value::Array(written.iter().map(|(f, v)| json!({"file": f, "validator": v})).collect());
            Ok(Outcome::ok(json!({"fixtures": report}), text))
        }
    }
}

/// Runs the tool and returns the exit code: 0 verified, 1 a check failed,
/// 2 bad input.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if let (Some(path), Some(a)) = (&cli.output, &o.artifact) {
                if let Err(e) = io::write_json(path, a) {
                    let _ = writeln!(err, "{e}");
                    return 2;
                }
            }
            let _ = match cli.format {
                Format::Json => write!(out, "{}", io::to_canonical_string(&o.report)),
                Format::Text => write!(out, "{}", o.text),
            };
            if o.verified {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
