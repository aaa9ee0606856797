//! Linear combinations of words with the shuffle product, and the change of
//! coordinates to polynomials in Lyndon words.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, Rational};
use crate::words::{is_lyndon, lyndon_factorization, shuffle_multiset, Word};

/// Finite ℚ-linear combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<Word, Rational>,
}

impl TensorElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty word, unit of the shuffle product.
    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(w, c);
        t
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// The dlex-greatest word in the support.
    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }
}

impl FromIterator<(Word, Rational)> for TensorElem {
    fn from_iter<I: IntoIterator<Item = (Word, Rational)>>(iter: I) -> Self {
        let mut t = Self::zero();
        for (w, c) in iter {
            t.add_term(w, c);
        }
        t
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| if c.is_one() { w.to_string() } else { format!("{}*{w}", fmt_rational(c)) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElem({self})")
    }
}

/// Bilinear shuffle product.
pub fn shuffle_mul(s: &TensorElem, t: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for (v, a) in s.terms() {
        for (w, b) in t.terms() {
            let ab = a * b;
            for (u, m) in shuffle_multiset(v, w) {
                out.add_term(u, &ab * Rational::from_integer(m.into()));
            }
        }
    }
    out
}

/// A multiset of Lyndon words, kept sorted.
pub type LyndonMonomial = Vec<Word>;

/// Polynomial in Lyndon words; each key stands for the shuffle product of its members.
pub type LyndonPoly = BTreeMap<LyndonMonomial, Rational>;

/// Shuffle product of the members of a Lyndon multiset.
pub fn shuffle_of(words: &[Word]) -> TensorElem {
    words
        .iter()
        .fold(TensorElem::one(), |acc, w| shuffle_mul(&acc, &TensorElem::word(w.clone())))
}

/// Rewrites `t` as a polynomial in Lyndon words under the shuffle product by
/// repeatedly eliminating the dlex-greatest word through its Lyndon
/// factorization.
pub fn lyndon_decompose(t: &TensorElem) -> LyndonPoly {
    let mut rest = t.clone();
    let mut out = LyndonPoly::new();
    while let Some((w, c)) = rest.leading().map(|(w, c)| (w.clone(), c.clone())) {
        let factors = if w.is_empty() {
            Vec::new()
        } else if is_lyndon(&w) {
            vec![w.clone()]
        } else {
            lyndon_factorization(&w).expect("nonempty")
        };
        let expansion = shuffle_of(&factors);
        let (lead, mult) = expansion.leading().expect("nonzero product");
        debug_assert_eq!(lead, &w, "concatenated factorization is the greatest shuffle");
        let coeff = c / mult;
        rest = rest.sub(&expansion.scale(&coeff));
        let mut key = factors;
        key.sort();
        let slot = out.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            out.remove(&key);
        }
    }
    out
}

/// Inverse of [`lyndon_decompose`].
pub fn lyndon_recompose(p: &LyndonPoly) -> TensorElem {
    let mut out = TensorElem::zero();
    for (mono, c) in p {
        out = out.add(&shuffle_of(mono).scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn t(parts: &[(&str, i64)]) -> TensorElem {
        parts.iter().map(|(s, c)| (w(s), q(*c))).collect()
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle_mul(&t(&[("a", 1)]), &t(&[("a", 1)])), t(&[("aa", 2)]));
        let x = t(&[("ab", 3), ("b", -1)]);
        assert_eq!(shuffle_mul(&TensorElem::one(), &x), x);
        assert_eq!(shuffle_mul(&t(&[("a", 1)]), &t(&[("b", 1)])), t(&[("ab", 1), ("ba", 1)]));
    }

    #[test]
    fn decompose_examples() {
        let d = lyndon_decompose(&t(&[("ba", 1)]));
        let expected = LyndonPoly::from([(vec![w("a"), w("b")], q(1)), (vec![w("ab")], q(-1))]);
        assert_eq!(d, expected);
        let d = lyndon_decompose(&t(&[("aab", 1)]));
        assert_eq!(d, LyndonPoly::from([(vec![w("aab")], q(1))]));
        let d = lyndon_decompose(&t(&[("aa", 1)]));
        assert_eq!(d, LyndonPoly::from([(vec![w("a"), w("a")], qf(1, 2))]));
        assert_eq!(lyndon_recompose(&d), t(&[("aa", 1)]));
    }

    #[test]
    fn unit_decomposes_to_empty_monomial() {
        let d = lyndon_decompose(&TensorElem::one());
        assert_eq!(d, LyndonPoly::from([(Vec::new(), q(1))]));
        assert_eq!(lyndon_recompose(&d), TensorElem::one());
    }
}
