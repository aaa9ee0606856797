//! Sparse multivariate polynomials over ℚ in an arbitrary ordered variable type.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rational, Rational};

/// Power product of variables, stored as `(var, exponent)` sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono<V> {
    factors: Vec<(V, u32)>,
}

impl<V: Ord + Clone> Mono<V> {
    pub fn one() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Self { factors: vec![(v, 1)] }
    }

    pub fn from_factors<I: IntoIterator<Item = (V, u32)>>(it: I) -> Self {
        let mut m = Self::one();
        for (v, e) in it {
            m = m.mul(&Self { factors: vec![(v, e)] });
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent_of(&self, v: &V) -> u32 {
        self.factors
            .binary_search_by(|(x, _)| x.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (&self.factors[i], &other.factors[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Self { factors: out }
    }

    /// Keeps the factors satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&V) -> bool) -> Self {
        Self { factors: self.factors.iter().filter(|(v, _)| keep(v)).cloned().collect() }
    }

    pub fn max_var(&self) -> Option<&V> {
        self.factors.last().map(|(v, _)| v)
    }
}

impl<V: fmt::Display> fmt::Display for Mono<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<V: fmt::Display> fmt::Debug for Mono<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite map from monomials to nonzero rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<V: Ord> {
    terms: BTreeMap<Mono<V>, Rational>,
}

impl<V: Ord> Default for Poly<V> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<V: Ord + Clone> Poly<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::term(Mono::var(v), Rational::one())
    }

    pub fn term(m: Mono<V>, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono<V>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono<V>, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono<V>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono<V>, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            out.add_term(m1.mul(m), c1 * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Every variable occurring, ascending.
    pub fn vars(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn max_var(&self) -> Option<V> {
        self.terms.keys().filter_map(|m| m.max_var()).max().cloned()
    }

    /// Applies the ring homomorphism sending each variable `v` to `image(v)`.
    pub fn eval_hom<W: Ord + Clone>(&self, mut image: impl FnMut(&V) -> Poly<W>) -> Poly<W>
    where
        V: Hash,
    {
        let mut cache: HashMap<(V, u32), Poly<W>> = HashMap::new();
        let mut base: HashMap<V, Poly<W>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let key = (v.clone(), *e);
                if !cache.contains_key(&key) {
                    let b = base.entry(v.clone()).or_insert_with(|| image(v)).clone();
                    cache.insert(key.clone(), b.pow(*e));
                }
                acc = acc.mul(&cache[&key]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Maps each variable through `f`, keeping exponents; `f` must be injective
    /// for the result to be meaningful as a relabelling.
    pub fn map_vars<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> W) -> Poly<W> {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            let mono = Mono::from_factors(m.factors().iter().map(|(v, e)| (f(v), *e)));
            out.add_term(mono, c.clone());
        }
        out
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            match (m.is_one(), a.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&a))?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{}*{m}", fmt_rational(&a))?,
            }
        }
        Ok(())
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
