use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational};

/// Univariate polynomial in `x` over the rationals, stored sparsely.
///
/// Only nonzero coefficients are kept, so the zero polynomial is the empty map
/// and [`UniPoly::degree`] returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from dense coefficients, lowest degree first.
    pub fn from_coeffs<I: IntoIterator<Item = Rational>>(cs: I) -> Self {
        let coeffs = cs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        Self { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| super::q(c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(One::is_one)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().map_or(true, |d| d == 0)
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn shift(&self, by: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| (k - 1, v * Rational::from_integer(BigInt::from(*k))))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k + 1, v / Rational::from_integer(BigInt::from(k + 1))))
                .collect(),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut prev = self.degree().unwrap_or(0);
        for (k, c) in self.coeffs.iter().rev() {
            for _ in *k..prev {
                acc *= at;
            }
            acc += c;
            prev = *k;
        }
        for _ in 0..prev {
            acc *= at;
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let dlc = d.lc();
        let mut quot = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.lc() / &dlc;
            let k = rd - dd;
            for (j, v) in d.terms() {
                rem.add_term(j + k, -(v * &c));
            }
            quot.add_term(k, c);
        }
        (quot, rem)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Extended Euclid: returns `(g, s, t)` with `g = s*a + t*b` and `g` monic
    /// (or zero when both inputs are zero).
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&qt * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&qt * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = Self::ext_gcd(&self.rem(m), m);
        g.is_one().then(|| s.rem(m))
    }

    /// Writes `self = c * P` with `P` having coprime integer coefficients and a
    /// positive leading coefficient. Returns `(c, dense integer coefficients of P)`.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        let Some(deg) = self.degree() else {
            return (Rational::zero(), Vec::new());
        };
        let mut lcm = BigInt::one();
        for c in self.coeffs.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints = vec![BigInt::zero(); deg as usize + 1];
        for (k, c) in &self.coeffs {
            ints[*k as usize] = c.numer() * (&lcm / c.denom());
        }
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints[deg as usize].is_negative() {
            content = -content;
        }
        for c in ints.iter_mut() {
            *c /= &content;
        }
        (Rational::new(content, lcm), ints)
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        Self::from_coeffs(cs.iter().map(|c| Rational::from_integer(c.clone())))
    }

    /// Dense coefficient vector, lowest degree first.
    pub fn to_dense(&self) -> Vec<Rational> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff(k)).collect(),
        }
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() || a.is_one() || b.is_one() {
        return if b.is_zero() { a.monic() } else { UniPoly::one() };
    }
    let (mut r0, mut r1) = (a.monic(), b.monic());
    while !r1.is_zero() {
        let r = r0.rem(&r1);
        r0 = std::mem::replace(&mut r1, if r.is_zero() { r } else { r.monic() });
    }
    r0
}

impl Ord for UniPoly {
    /// Degree first, then coefficients from the top degree down.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let d = self.degree().unwrap_or(0);
            (0..=d)
                .rev()
                .map(|k| self.coeff(k).cmp(&other.coeff(k)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    /// Compact infix form with descending powers, e.g. `x^2-3/2*x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if var.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    #[test]
    fn gcd_examples() {
        let a = UniPoly::from_i64s(&[-1, 0, 1]);
        let b = UniPoly::from_i64s(&[-1, 1]);
        assert_eq!(poly_gcd(&a, &b), b);
        let p = UniPoly::from_i64s(&[2, 0, 4]);
        assert_eq!(poly_gcd(&p, &UniPoly::zero()), p.monic());
        assert!(poly_gcd(&UniPoly::one(), &p).is_one());
        assert!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn divrem_reconstructs() {
        let a = UniPoly::from_i64s(&[3, -2, 0, 5, 1]);
        let d = UniPoly::from_coeffs([qf(1, 2), q(0), q(3)]);
        let (qt, r) = a.divrem(&d);
        assert_eq!(&(&qt * &d) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn display_and_eval() {
        let p = UniPoly::from_coeffs([q(1), qf(-3, 2), q(1)]);
        assert_eq!(p.to_string(), "x^2-3/2*x+1");
        assert_eq!(p.eval(&q(2)), q(2));
        assert_eq!(UniPoly::monomial(3, q(1)).eval(&q(2)), q(8));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = UniPoly::from_i64s(&[1, 0, 1]);
        let b = UniPoly::from_i64s(&[0, 1, 1]);
        let (g, s, t) = UniPoly::ext_gcd(&a, &b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn primitive_integer_parts() {
        let p = UniPoly::from_coeffs([qf(1, 2), qf(-3, 4)]);
        let (c, ints) = p.primitive_integer();
        assert_eq!(ints, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(UniPoly::from_integers(&ints).scale(&c), p);
    }
}
