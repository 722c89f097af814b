//! Finite formal linear combinations with deterministic key order.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for LinComb<K, S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K, S> LinComb<K, S>
where
    K: Ord + Clone,
    S: Clone + Zero + Add<Output = S> + for<'a> Mul<&'a S, Output = S>,
{
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: S) -> Self {
        let mut out = Self::new();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: K, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c);
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, S)> {
        self.terms.into_iter()
    }
}

impl<K, S> LinComb<K, S>
where
    K: Ord + Clone,
    S: Clone + Zero + Add<Output = S> + Neg<Output = S> + for<'a> Mul<&'a S, Output = S>,
{
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<K, S> FromIterator<(K, S)> for LinComb<K, S>
where
    K: Ord + Clone,
    S: Clone + Zero + Add<Output = S> + for<'a> Mul<&'a S, Output = S>,
{
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, s) in iter {
            out.add_term(k, s);
        }
        out
    }
}
