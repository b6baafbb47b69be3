use std::fmt::Write;

use crate::graded::{enumerate_partitions, koszul_exponent, sum_degrees, Degree, LinComb, PartitionSchema, SpaceRef};
use crate::scalar::Scalar;

/// A word `v_1 ⊗ ... ⊗ v_p` of basis indices, `p >= 1`.
pub type Word = Vec<usize>;

/// A finite linear combination of words in `T(V)`.
pub type TensorVector<S> = LinComb<Word, S>;

/// An element of `T(V) ⊗ T(V)`.
pub type TensorPair<S> = LinComb<(Word, Word), S>;

/// An element of `T(V) ⊗ T(V) ⊗ T(V)`.
pub type TensorTriple<S> = LinComb<(Word, Word, Word), S>;

pub fn word_degrees(space: &SpaceRef, word: &[usize]) -> Vec<Degree> {
    word.iter().map(|&i| space.degree(i).clone()).collect()
}

pub fn word_degree(space: &SpaceRef, word: &[usize]) -> Degree {
    sum_degrees(space.n(), word.iter().map(|&i| space.degree(i)))
}

/// `Δ(v_1...v_p) = Σ ε(I;J) V_I ⊗ V_J v_p` over `I u J = {1..p-1}`, `I` nonempty.
pub fn coproduct<S: Scalar>(space: &SpaceRef, word: &[usize]) -> TensorPair<S> {
    coproduct_with(space, word, true)
}

/// The coproduct with or without its Koszul signs. Dropping the signs gives
/// a deliberately wrong operation used to exercise the identity checker.
pub fn coproduct_with<S: Scalar>(space: &SpaceRef, word: &[usize], koszul: bool) -> TensorPair<S> {
    let mut out = LinComb::new();
    let p = word.len();
    if p < 2 {
        return out;
    }
    let degs = word_degrees(space, word);
    for part in enumerate_partitions(PartitionSchema::TwoPart { len: p - 1 }).iter() {
        let (i, j) = (&part[0], &part[1]);
        let left: Word = i.iter().map(|&s| word[s]).collect();
        let mut right: Word = j.iter().map(|&s| word[s]).collect();
        right.push(word[p - 1]);
        let e = if koszul {
            let concat: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            koszul_exponent(&degs, &concat)
        } else {
            0
        };
        out.add_term((left, right), S::sign_power(e));
    }
    out
}

pub fn coproduct_vector<S: Scalar>(space: &SpaceRef, t: &TensorVector<S>) -> TensorPair<S> {
    let mut out = LinComb::new();
    for (w, c) in t.iter() {
        out.add_scaled(&coproduct(space, w), c);
    }
    out
}

/// Evaluates both sides of `(id⊗Δ)Δ = (Δ⊗id)Δ + (T⊗id)(Δ⊗id)Δ` on `word`
/// and returns `lhs - rhs`.
pub fn dual_leibniz_residual<S: Scalar>(
    space: &SpaceRef,
    word: &[usize],
    delta: &dyn Fn(&[usize]) -> TensorPair<S>,
) -> TensorTriple<S> {
    let first = delta(word);
    let mut lhs: TensorTriple<S> = LinComb::new();
    let mut rhs: TensorTriple<S> = LinComb::new();
    for ((u, w), c) in first.iter() {
        for ((a, b), d) in delta(w).iter() {
            lhs.add_term((u.clone(), a.clone(), b.clone()), c.clone() * d.clone());
        }
        for ((a, b), d) in delta(u).iter() {
            let coeff = c.clone() * d.clone();
            rhs.add_term((a.clone(), b.clone(), w.clone()), coeff.clone());
            let twist = word_degree(space, a).pair(&word_degree(space, b));
            rhs.add_term((b.clone(), a.clone(), w.clone()), coeff * S::sign_power(twist));
        }
    }
    lhs.sub(&rhs)
}

/// Checks the dual Leibniz identity on every basis word of length `<= max_length`.
pub fn check_dual_leibniz<S: Scalar>(space: &SpaceRef, max_length: usize) -> bool {
    check_dual_leibniz_with::<S>(space, max_length, &|w| coproduct(space, w))
}

pub fn check_dual_leibniz_with<S: Scalar>(
    space: &SpaceRef,
    max_length: usize,
    delta: &dyn Fn(&[usize]) -> TensorPair<S>,
) -> bool {
    (1..=max_length).all(|len| space.tuples(len).all(|w| dual_leibniz_residual(space, &w, delta).is_zero()))
}

/// Every basis word of length `1..=max_length`.
pub fn basis_words(space: &SpaceRef, max_length: usize) -> impl Iterator<Item = Word> + '_ {
    (1..=max_length).flat_map(move |len| space.tuples(len))
}

/// Tensor product of linear combinations of basis vectors, as words.
pub fn tensor_of<S: Scalar>(factors: &[&LinComb<usize, S>]) -> TensorVector<S> {
    let mut acc: Vec<(Word, S)> = vec![(Vec::new(), S::one())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (w, c) in &acc {
            for (&i, d) in f.iter() {
                let mut w2 = w.clone();
                w2.push(i);
                next.push((w2, c.clone() * d.clone()));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc.into_iter().collect()
}

pub fn format_word(space: &SpaceRef, word: &[usize]) -> String {
    word.iter().map(|&i| space.name(i)).collect::<Vec<_>>().join("⊗")
}

fn format_coeff<S: Scalar>(c: &S) -> String {
    let neg = *c < S::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    let sign = if neg { "-" } else { "+" };
    if abs == S::one() {
        sign.to_string()
    } else {
        format!("{sign}{abs}")
    }
}

/// Canonical text form, one term per line: `± (word) ⊗ (word)`.
pub fn format_pair<S: Scalar>(space: &SpaceRef, t: &TensorPair<S>) -> String {
    let mut out = String::new();
    for ((a, b), c) in t.iter() {
        let _ = writeln!(out, "{} ({}) ⊗ ({})", format_coeff(c), format_word(space, a), format_word(space, b));
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn coproduct_examples() {
        let v = GradedSpace::from_pairs(1, &[("a", &[1]), ("b", &[1]), ("c", &[0])]).unwrap();
        assert!(coproduct::<Q>(&v, &[0]).is_zero());
        let two = coproduct::<Q>(&v, &[0, 1]);
        assert_eq!(two.len(), 1);
        assert_eq!(two.coeff(&(vec![0], vec![1])), Q::from_integer(1.into()));
        let three = coproduct::<Q>(&v, &[0, 1, 2]);
        assert_eq!(three.len(), 3);
        assert_eq!(three.coeff(&(vec![0], vec![1, 2])), Q::from_integer(1.into()));
        assert_eq!(three.coeff(&(vec![1], vec![0, 2])), Q::from_integer((-1).into()));
        assert_eq!(three.coeff(&(vec![0, 1], vec![2])), Q::from_integer(1.into()));
    }

    #[test]
    fn dual_leibniz_on_f3() {
        let f3 = GradedSpace::from_pairs(2, &[("a", &[1, 0]), ("b", &[0, 1])]).unwrap();
        assert!(check_dual_leibniz::<Q>(&f3, 1));
        assert!(check_dual_leibniz::<Q>(&f3, 4));
        let broken = |w: &[usize]| coproduct_with::<Q>(&f3, w, false);
        assert!(!check_dual_leibniz_with(&f3, 3, &broken));
    }

    #[test]
    fn text_form() {
        let v = GradedSpace::from_pairs(1, &[("a", &[1]), ("b", &[1])]).unwrap();
        let t = coproduct::<Q>(&v, &[0, 1, 0]);
        let s = format_pair(&v, &t);
        assert!(s.contains("+ (a) ⊗ (b⊗a)"));
        assert!(s.contains("- (b) ⊗ (a⊗a)"));
    }
}
