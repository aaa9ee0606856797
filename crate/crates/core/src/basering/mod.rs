//! Differential base rings with a quasi-integration `Q` (`∂Q∂ = ∂`, `Q∂Q = Q`).
//!
//! Each instance fixes two bases: one for the kernel of `Q` (the letters
//! words are built from) and one for the image of `Q` (the first slot of
//! `eps` constants). Both are registered lazily and never renumbered.

mod laurent;
mod rational;
mod trivial;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::RwLock;

pub use laurent::{expand_ratfun, laurent_evaluate, laurent_integrate, LaurentBase, LaurentLog};
pub use rational::{reassemble_letters, LetterKey, RationalBase, RjKey};
pub use trivial::TrivialBase;

use crate::arith::Rational;
use crate::constants::RjId;
use crate::error::Result;
use crate::words::Letter;

pub trait BaseRing: Send + Sync {
    type Elem: Clone + Eq + std::hash::Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, c: &Rational) -> Self::Elem;
    fn is_zero(&self, f: &Self::Elem) -> bool;
    fn add(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem;
    fn neg(&self, f: &Self::Elem) -> Self::Elem;
    fn mul(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem;

    fn sub(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.add(f, &self.neg(g))
    }

    fn scale(&self, f: &Self::Elem, c: &Rational) -> Self::Elem {
        self.mul(f, &self.from_rational(c))
    }

    /// The element as a scalar, if it is one.
    fn as_rational(&self, f: &Self::Elem) -> Option<Rational>;

    fn derive(&self, f: &Self::Elem) -> Self::Elem;

    /// The quasi-integration `Q`.
    fn quasi_int(&self, f: &Self::Elem) -> Self::Elem;

    /// `f - ∂Qf` expanded over the letter basis of `ker Q`.
    fn t_part(&self, f: &Self::Elem) -> Result<Vec<(Letter, Rational)>>;

    /// `f = c + Σ q_i b_i` with `c` scalar and `b_i` basis elements of `im Q`.
    fn cj_split(&self, f: &Self::Elem) -> Result<(Rational, Vec<(RjId, Rational)>)>;

    fn letter_value(&self, l: Letter) -> Self::Elem;
    fn rj_value(&self, id: RjId) -> Self::Elem;

    /// Printable form of an element, parseable where the instance has a syntax.
    fn format(&self, f: &Self::Elem) -> String;

    fn describe_letter(&self, l: Letter) -> String {
        self.format(&self.letter_value(l))
    }

    fn describe_rj(&self, id: RjId) -> String {
        self.format(&self.rj_value(id))
    }

    fn letter_count(&self) -> usize;
    fn rj_count(&self) -> usize;
}

/// Append-only bijection between keys and dense ids, safe for concurrent use.
pub(crate) struct Registry<K> {
    inner: RwLock<(HashMap<K, u32>, Vec<K>)>,
}

impl<K: Clone + Eq + Hash> Registry<K> {
    pub(crate) fn new() -> Self {
        Self { inner: RwLock::new((HashMap::new(), Vec::new())) }
    }

    pub(crate) fn id(&self, key: &K) -> u32 {
        if let Some(id) = self.inner.read().expect("registry lock").0.get(key) {
            return *id;
        }
        let mut g = self.inner.write().expect("registry lock");
        if let Some(id) = g.0.get(key) {
            return *id;
        }
        let id = g.1.len() as u32;
        g.1.push(key.clone());
        g.0.insert(key.clone(), id);
        id
    }

    pub(crate) fn key(&self, id: u32) -> K {
        self.inner.read().expect("registry lock").1[id as usize].clone()
    }

    pub(crate) fn len(&self) -> usize {
        self.inner.read().expect("registry lock").1.len()
    }
}
