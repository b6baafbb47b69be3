//! Plain text rendering of maps and vectors.

use loday_core::graded::{Coeffs, GradedSpace};
use loday_core::multilinear::{Cochain, MultiMap};
use loday_core::{QSequence, Rat};
use num_traits::{One, Signed};

pub fn names(space: &GradedSpace, t: &[usize]) -> Vec<String> {
    t.iter().map(|&i| space.name(i).to_string()).collect()
}

/// `2 y - 1/2 x`, or `0`.
pub fn describe_value(space: &GradedSpace, v: &Coeffs<Rat>) -> String {
    let mut out = String::new();
    for (k, (&i, c)) in v.iter().enumerate() {
        let abs = c.abs();
        let sign = match (k, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(sign);
        if !abs.is_one() {
            out.push_str(&format!("{abs} "));
        }
        out.push_str(space.name(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn describe_map(m: &MultiMap<Rat>) -> String {
    let mut out = format!("arity {}, weight {}\n", m.arity(), m.weight());
    let mut any = false;
    for (t, v) in m.entries().filter(|(_, v)| !v.is_zero()) {
        any = true;
        out.push_str(&format!("  ({}) -> {}\n", names(m.domain(), t).join(", "), describe_value(m.codomain(), v)));
    }
    if !any {
        out.push_str("  0\n");
    }
    out
}

pub fn describe_cochain(c: &Cochain<Rat>) -> String {
    match c {
        Cochain::Map(m) => describe_map(m),
        Cochain::Element(e) => format!("element of degree {}: {}\n", e.degree, describe_value(&e.space, &e.value)),
        Cochain::Null { .. } => "0\n".into(),
    }
}

pub fn describe_sequence(s: &QSequence) -> String {
    if s.is_zero() {
        return "0\n".into();
    }
    s.maps().map(|(_, m)| describe_map(m)).collect()
}
