use std::collections::btree_map::{self, BTreeMap};

use crate::scalar::Scalar;

/// A finite linear combination of keys with nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LinComb<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for LinComb<K, S> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> LinComb<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: S) -> Self {
        let mut c = Self::new();
        c.add_term(key, coeff);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.terms.get(key)
    }

    pub fn coeff(&self, key: &K) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K, S>, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone() * factor.clone());
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K, S>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-S::one())
    }

    pub fn sub(&self, other: &LinComb<K, S>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2, S> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, S> {
        self.terms
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for LinComb<K, S> {
    fn from_iter<T: IntoIterator<Item = (K, S)>>(iter: T) -> Self {
        let mut c = LinComb::new();
        for (k, s) in iter {
            c.add_term(k, s);
        }
        c
    }
}

impl<'a, K: Ord, S> IntoIterator for &'a LinComb<K, S> {
    type Item = (&'a K, &'a S);
    type IntoIter = btree_map::Iter<'a, K, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
