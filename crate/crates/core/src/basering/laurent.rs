//! Truncated Laurent series in `x` with polynomial dependence on `ln x`.
//!
//! A series carries an optional validity window `N`: every coefficient with
//! exponent `< N` is exact, everything from `x^N` on is unknown. `None` means
//! the series is an exact finite sum. Operations track the window so that a
//! value depending on unknown coefficients is reported as an error instead of
//! being silently wrong.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{BaseRing, Registry};
use crate::arith::{fmt_rational, RatFun, Rational, UniPoly};
use crate::constants::RjId;
use crate::error::{IdrError, Result};
use crate::words::Letter;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentLog {
    coeffs: BTreeMap<(i64, u32), Rational>,
    valid_below: Option<i64>,
}

fn min_window(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn shift_window(w: Option<i64>, by: Option<i64>) -> Option<i64> {
    match (w, by) {
        (Some(n), Some(v)) => Some(n + v),
        _ => None,
    }
}

impl LaurentLog {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c · x^k · ln(x)^n`, exact.
    pub fn monomial(k: i64, n: u32, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(k, n, c);
        s
    }

    /// `ln x`, exact.
    pub fn log() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// The zero series known only below `x^n`.
    pub fn big_o(n: i64) -> Self {
        Self { coeffs: BTreeMap::new(), valid_below: Some(n) }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, u32), Rational)>>(terms: I, valid_below: Option<i64>) -> Self {
        let mut s = Self { coeffs: BTreeMap::new(), valid_below };
        for ((k, n), c) in terms {
            s.add_term(k, n, c);
        }
        s
    }

    fn add_term(&mut self, k: i64, n: u32, c: Rational) {
        if c.is_zero() || self.valid_below.is_some_and(|w| k >= w) {
            return;
        }
        match self.coeffs.entry((k, n)) {
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

    pub fn valid_below(&self) -> Option<i64> {
        self.valid_below
    }

    pub fn is_exact(&self) -> bool {
        self.valid_below.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64, n: u32) -> Rational {
        self.coeffs.get(&(k, n)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &Rational)> {
        self.coeffs.iter()
    }

    /// Lowest exponent that can carry a nonzero coefficient, counting the
    /// unknown tail. `None` for the exact zero series.
    fn effective_valuation(&self) -> Option<i64> {
        let known = self.coeffs.keys().next().map(|(k, _)| *k);
        match (known, self.valid_below) {
            (Some(k), Some(w)) => Some(k.min(w)),
            (k, w) => k.or(w),
        }
    }

    /// Forgets every coefficient from `x^n` on.
    pub fn truncate(&self, n: i64) -> Self {
        let w = min_window(self.valid_below, Some(n));
        Self::from_terms(self.coeffs.iter().map(|(k, c)| (*k, c.clone())), w)
    }

    /// Equality on the common validity window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let w = min_window(self.valid_below, other.valid_below);
        match w {
            None => self == other,
            Some(n) => self.truncate(n).coeffs == other.truncate(n).coeffs,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, v)| (*k, v * c)), self.valid_below)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), valid_below: self.valid_below.map(|n| n - 1) };
        for (&(k, n), c) in &self.coeffs {
            out.add_term(k - 1, n, c * Rational::from_integer(k.into()));
            if n > 0 {
                out.add_term(k - 1, n - 1, c * Rational::from_integer(n.into()));
            }
        }
        out
    }

    /// A termwise antiderivative with no `x^0 ln^0` term.
    fn antiderivative(&self) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), valid_below: self.valid_below.map(|n| n + 1) };
        for (&(k, n), c) in &self.coeffs {
            if k == -1 {
                out.add_term(0, n + 1, c / Rational::from_integer((n + 1).into()));
                continue;
            }
            let kp1 = Rational::from_integer((k + 1).into());
            let mut factor = c / &kp1;
            for i in 0..=n {
                out.add_term(k + 1, n - i, factor.clone());
                factor = -factor * Rational::from_integer((n - i).into()) / &kp1;
            }
        }
        out
    }
}

impl Add for &LaurentLog {
    type Output = LaurentLog;

    fn add(self, rhs: &LaurentLog) -> LaurentLog {
        let w = min_window(self.valid_below, rhs.valid_below);
        let mut out = LaurentLog { coeffs: BTreeMap::new(), valid_below: w };
        for (&(k, n), c) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            out.add_term(k, n, c.clone());
        }
        out
    }
}

impl Neg for &LaurentLog {
    type Output = LaurentLog;

    fn neg(self) -> LaurentLog {
        self.scale(&-Rational::one())
    }
}

impl Sub for &LaurentLog {
    type Output = LaurentLog;

    fn sub(self, rhs: &LaurentLog) -> LaurentLog {
        self + &(-rhs)
    }
}

impl Mul for &LaurentLog {
    type Output = LaurentLog;

    fn mul(self, rhs: &LaurentLog) -> LaurentLog {
        let w = min_window(
            shift_window(self.valid_below, rhs.effective_valuation()),
            shift_window(rhs.valid_below, self.effective_valuation()),
        );
        let mut out = LaurentLog { coeffs: BTreeMap::new(), valid_below: w };
        for (&(k1, n1), c1) in &self.coeffs {
            for (&(k2, n2), c2) in &rhs.coeffs {
                out.add_term(k1 + k2, n1 + n2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (&(k, n), c) in &self.coeffs {
            let mut s = String::new();
            if parts.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            s.push_str(&fmt_rational(&c.abs()));
            if k != 0 {
                s.push_str(&format!(" * x^{k}"));
            }
            match n {
                0 => {}
                1 => s.push_str(" * ln(x)"),
                _ => s.push_str(&format!(" * ln(x)^{n}")),
            }
            parts.push(s);
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.concat() };
        match self.valid_below {
            None => f.write_str(&body),
            Some(n) if parts.is_empty() => write!(f, "O(x^{n})"),
            Some(n) => write!(f, "{body} + O(x^{n})"),
        }
    }
}

impl fmt::Debug for LaurentLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentLog({self})")
    }
}

/// The coefficient of `x^0 ln(x)^0`.
pub fn laurent_evaluate(f: &LaurentLog) -> Result<Rational> {
    match f.valid_below {
        Some(n) if n <= 0 => Err(IdrError::TruncationInsufficient { valid_below: n }),
        _ => Ok(f.coeff(0, 0)),
    }
}

/// The integral `g - E g` for the termwise antiderivative `g`. The
/// antiderivative never contains `x^0 ln^0`, so no correction is needed.
pub fn laurent_integrate(f: &LaurentLog) -> LaurentLog {
    f.antiderivative()
}

/// Laurent expansion at `x = 0`. Exact when the denominator is a power of `x`,
/// otherwise valid below `x^n`.
pub fn expand_ratfun(f: &RatFun, n: i64) -> LaurentLog {
    let den = f.den();
    let v = den.valuation().expect("denominator is nonzero") as i64;
    let rest = UniPoly::from_terms(den.terms().map(|(k, c)| (k - v as u32, c.clone())));
    if rest.is_constant() {
        let inv = rest.coeff(0).recip();
        return LaurentLog::from_terms(
            f.num().terms().map(|(k, c)| ((k as i64 - v, 0), c * &inv)),
            None,
        );
    }
    // num/rest as a power series to degree n + v - 1
    let top = n + v;
    let mut out = LaurentLog::big_o(n);
    if top <= 0 {
        return out;
    }
    let top = top as usize;
    let d: Vec<Rational> = (0..top).map(|i| rest.coeff(i as u32)).collect();
    let d0 = d[0].recip();
    let mut s: Vec<Rational> = Vec::with_capacity(top);
    for i in 0..top {
        let mut acc = f.num().coeff(i as u32);
        for j in 1..=i {
            if !d[j].is_zero() {
                acc -= &d[j] * &s[i - j];
            }
        }
        s.push(acc * &d0);
    }
    for (i, c) in s.into_iter().enumerate() {
        out.add_term(i as i64 - v, 0, c);
    }
    out
}

/// The model ring `ℚ((x))[ln x]` with `E` the `x^0 ln^0` coefficient and `Q`
/// the integral `g - Eg`. `Q` is a genuine integration here, so its kernel is
/// trivial and no letters ever arise. Image basis ids are the monomials
/// `x^k ln^n` other than `1`.
pub struct LaurentBase {
    rj: Registry<(i64, u32)>,
}

impl Default for LaurentBase {
    fn default() -> Self {
        Self::new()
    }
}

impl LaurentBase {
    pub fn new() -> Self {
        Self { rj: Registry::new() }
    }
}

impl BaseRing for LaurentBase {
    type Elem = LaurentLog;

    fn zero(&self) -> LaurentLog {
        LaurentLog::zero()
    }

    fn one(&self) -> LaurentLog {
        LaurentLog::one()
    }

    fn from_rational(&self, c: &Rational) -> LaurentLog {
        LaurentLog::constant(c.clone())
    }

    fn is_zero(&self, f: &LaurentLog) -> bool {
        f.is_zero() && f.is_exact()
    }

    fn add(&self, f: &LaurentLog, g: &LaurentLog) -> LaurentLog {
        f + g
    }

    fn neg(&self, f: &LaurentLog) -> LaurentLog {
        -f
    }

    fn mul(&self, f: &LaurentLog, g: &LaurentLog) -> LaurentLog {
        f * g
    }

    fn scale(&self, f: &LaurentLog, c: &Rational) -> LaurentLog {
        f.scale(c)
    }

    fn as_rational(&self, f: &LaurentLog) -> Option<Rational> {
        if !f.is_exact() || f.coeffs.keys().any(|k| *k != (0, 0)) {
            return None;
        }
        Some(f.coeff(0, 0))
    }

    fn derive(&self, f: &LaurentLog) -> LaurentLog {
        f.derivative()
    }

    fn quasi_int(&self, f: &LaurentLog) -> LaurentLog {
        laurent_integrate(f)
    }

    fn t_part(&self, _f: &LaurentLog) -> Result<Vec<(Letter, Rational)>> {
        Ok(Vec::new())
    }

    fn cj_split(&self, f: &LaurentLog) -> Result<(Rational, Vec<(RjId, Rational)>)> {
        if let Some(n) = f.valid_below {
            return Err(IdrError::TruncationInsufficient { valid_below: n });
        }
        let mut out = Vec::new();
        for (&key, c) in &f.coeffs {
            if key != (0, 0) {
                out.push((RjId(self.rj.id(&key)), c.clone()));
            }
        }
        Ok((f.coeff(0, 0), out))
    }

    fn letter_value(&self, l: Letter) -> LaurentLog {
        panic!("the Laurent model has no letters, got {}", l.name())
    }

    fn rj_value(&self, id: RjId) -> LaurentLog {
        let (k, n) = self.rj.key(id.0);
        LaurentLog::monomial(k, n, Rational::one())
    }

    fn format(&self, f: &LaurentLog) -> String {
        f.to_string()
    }

    fn letter_count(&self) -> usize {
        0
    }

    fn rj_count(&self) -> usize {
        self.rj.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf, rf};

    fn mono(k: i64, n: u32, c: Rational) -> LaurentLog {
        LaurentLog::monomial(k, n, c)
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(laurent_integrate(&mono(-1, 0, q(1))), LaurentLog::log());
        assert_eq!(laurent_integrate(&mono(-2, 0, q(1))), mono(-1, 0, q(-1)));
        let got = laurent_integrate(&mono(1, 1, q(1)));
        assert_eq!(got, &mono(2, 1, qf(1, 2)) + &mono(2, 0, qf(-1, 4)));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(laurent_evaluate(&LaurentLog::one()).unwrap(), q(1));
        let f = &mono(3, 2, q(1)) + &LaurentLog::constant(q(7));
        assert_eq!(laurent_evaluate(&f).unwrap(), q(7));
        assert_eq!(laurent_evaluate(&mono(-1, 0, q(1))).unwrap(), q(0));
        assert!(matches!(
            laurent_evaluate(&LaurentLog::big_o(0)),
            Err(IdrError::TruncationInsufficient { valid_below: 0 })
        ));
    }

    #[test]
    fn expansion_examples() {
        let f = expand_ratfun(&rf("1/(x+1)"), 3);
        let expected = LaurentLog::from_terms([((0, 0), q(1)), ((1, 0), q(-1)), ((2, 0), q(1))], Some(3));
        assert_eq!(f, expected);
        assert_eq!(expand_ratfun(&rf("1/x"), 3), mono(-1, 0, q(1)));
        assert_eq!(expand_ratfun(&rf("x^2"), 3), mono(2, 0, q(1)));
        let g = expand_ratfun(&rf("1/(x^2+x)"), 2);
        assert_eq!(g.valid_below(), Some(2));
        assert_eq!(g.coeff(-1, 0), q(1));
        assert_eq!(g.coeff(1, 0), q(1));
    }

    #[test]
    fn derivative_of_log() {
        assert_eq!(LaurentLog::log().derivative(), mono(-1, 0, q(1)));
    }

    #[test]
    fn windows_follow_valuations() {
        let f = expand_ratfun(&rf("1/(x+1)"), 4);
        let g = mono(-2, 0, q(1));
        assert_eq!((&f * &g).valid_below(), Some(2));
        assert_eq!(f.derivative().valid_below(), Some(3));
        assert_eq!(laurent_integrate(&f).valid_below(), Some(5));
        assert_eq!((&f + &g).valid_below(), Some(4));
        assert_eq!((&f * &LaurentLog::zero()).valid_below(), None);
    }

    #[test]
    fn display_format() {
        let f = &mono(-1, 2, qf(-1, 2)) + &expand_ratfun(&rf("1/(1-x)"), 2);
        assert_eq!(f.to_string(), "-1/2 * x^-1 * ln(x)^2 + 1 + 1 * x^1 + O(x^2)");
    }

    #[test]
    fn base_splits_off_constant() {
        let b = LaurentBase::new();
        let f = &LaurentLog::constant(q(3)) + &LaurentLog::log();
        let (c, j) = b.cj_split(&f).unwrap();
        assert_eq!(c, q(3));
        assert_eq!(j.len(), 1);
        assert_eq!(b.rj_value(j[0].0), LaurentLog::log());
        assert!(b.cj_split(&LaurentLog::big_o(5)).is_err());
    }
}
