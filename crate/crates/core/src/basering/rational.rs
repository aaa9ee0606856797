//! Rational functions `ℚ(x)` with `Q` defined through partial fractions:
//! polynomial parts are integrated with zero constant term, higher-order poles
//! go through Hermite reduction, and simple-pole terms are dropped.
//!
//! Letters are `x^k/p` (`p` monic irreducible, `k < deg p`). The image of `Q`
//! has basis `x^k` (`k ≥ 1`) and `x^k/p^j` (`j ≥ 1`, `k < deg p`).

use std::collections::HashMap;
use std::sync::RwLock;

use super::{BaseRing, Registry};
use crate::arith::{irreducible_factor, partial_fractions_with, PartialFractionForm, RatFun, Rational, UniPoly};
use crate::constants::RjId;
use crate::error::{IdrError, Result};
use crate::words::Letter;

/// The letter `x^k/p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LetterKey {
    pub p: UniPoly,
    pub k: u32,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RjKey {
    /// `x^k`, `k ≥ 1`.
    Power(u32),
    /// `x^k / p^j`.
    Fraction { p: UniPoly, j: u32, k: u32 },
}

#[derive(Clone)]
struct Hermite {
    integral: RatFun,
    simple: Vec<(UniPoly, UniPoly)>,
}

pub struct RationalBase {
    letters: Registry<LetterKey>,
    rj: Registry<RjKey>,
    factor_cache: RwLock<HashMap<UniPoly, Vec<(UniPoly, u32)>>>,
    hermite_cache: RwLock<HashMap<RatFun, Hermite>>,
}

impl Default for RationalBase {
    fn default() -> Self {
        Self::new()
    }
}

impl RationalBase {
    pub fn new() -> Self {
        Self {
            letters: Registry::new(),
            rj: Registry::new(),
            factor_cache: RwLock::new(HashMap::new()),
            hermite_cache: RwLock::new(HashMap::new()),
        }
    }

    /// Registers letters in the given order before anything else, fixing the
    /// alphabet order. Each entry must be a letter basis element `x^k/p`.
    pub fn with_letters(order: &[RatFun]) -> Result<Self> {
        let base = Self::new();
        for f in order {
            base.pin_letter(f)?;
        }
        Ok(base)
    }

    /// The letter for the basis element `f = x^k/p`.
    pub fn pin_letter(&self, f: &RatFun) -> Result<Letter> {
        let t = self.t_part(f)?;
        match t.as_slice() {
            [(l, c)] if c == &Rational::from_integer(1.into()) && self.letter_value(*l) == *f => Ok(*l),
            _ => Err(IdrError::Invalid(format!("{f} is not a letter basis element x^k/p"))),
        }
    }

    pub fn letter_key(&self, l: Letter) -> LetterKey {
        self.letters.key(l.0)
    }

    pub fn rj_key(&self, id: RjId) -> RjKey {
        self.rj.key(id.0)
    }

    pub fn factor(&self, p: &UniPoly) -> Vec<(UniPoly, u32)> {
        if let Some(f) = self.factor_cache.read().expect("cache lock").get(p) {
            return f.clone();
        }
        let f = irreducible_factor(p).expect("nonzero polynomial");
        self.factor_cache.write().expect("cache lock").insert(p.clone(), f.clone());
        f
    }

    pub fn partial_fractions(&self, f: &RatFun) -> PartialFractionForm {
        let factors = if f.is_polynomial() { Vec::new() } else { self.factor(f.den()) };
        partial_fractions_with(f, &factors)
    }

    fn hermite(&self, f: &RatFun) -> Hermite {
        if let Some(h) = self.hermite_cache.read().expect("cache lock").get(f) {
            return h.clone();
        }
        let h = self.hermite_uncached(f);
        self.hermite_cache.write().expect("cache lock").insert(f.clone(), h.clone());
        h
    }

    fn hermite_uncached(&self, f: &RatFun) -> Hermite {
        let pf = self.partial_fractions(f);
        let mut integral = RatFun::from_poly(pf.poly_part.integral());
        let mut simple = Vec::new();
        let mut by_p: Vec<(UniPoly, Vec<UniPoly>)> = Vec::new();
        for t in &pf.terms {
            let slot = match by_p.iter().position(|(p, _)| *p == t.p) {
                Some(i) => i,
                None => {
                    by_p.push((t.p.clone(), Vec::new()));
                    by_p.len() - 1
                }
            };
            let levels = &mut by_p[slot].1;
            if levels.len() < t.j as usize {
                levels.resize(t.j as usize, UniPoly::zero());
            }
            levels[t.j as usize - 1] = &levels[t.j as usize - 1] + &t.a;
        }
        for (p, mut levels) in by_p {
            let dp = p.derivative();
            let dp_inv = dp.inverse_mod(&p).expect("irreducible p is coprime to p'");
            for j in (2..=levels.len()).rev() {
                let a = std::mem::take(&mut levels[j - 1]);
                if a.is_zero() {
                    continue;
                }
                // a/p^j = (b/p^(j-1))' + (s - b')/p^(j-1), with (j-1) b p' ≡ -a mod p
                let jm1 = Rational::from_integer(((j - 1) as i64).into());
                let b = (&a * &dp_inv).rem(&p).scale(&(-jm1.recip()));
                let s = (&a + &(&b * &dp).scale(&jm1)).exact_div(&p).expect("divisible by p");
                let piece = RatFun::new(b.clone(), p.pow(j as u32 - 1)).expect("nonzero");
                integral = &integral + &piece;
                levels[j - 2] = &levels[j - 2] + &(&s - &b.derivative());
            }
            if let Some(a1) = levels.first() {
                if !a1.is_zero() {
                    simple.push((p.clone(), a1.clone()));
                }
            }
        }
        Hermite { integral, simple }
    }
}

impl BaseRing for RationalBase {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero()
    }

    fn one(&self) -> RatFun {
        RatFun::one()
    }

    fn from_rational(&self, c: &Rational) -> RatFun {
        RatFun::constant(c.clone())
    }

    fn is_zero(&self, f: &RatFun) -> bool {
        f.is_zero()
    }

    fn add(&self, f: &RatFun, g: &RatFun) -> RatFun {
        f + g
    }

    fn neg(&self, f: &RatFun) -> RatFun {
        -f
    }

    fn mul(&self, f: &RatFun, g: &RatFun) -> RatFun {
        f * g
    }

    fn scale(&self, f: &RatFun, c: &Rational) -> RatFun {
        f.scale(c)
    }

    fn as_rational(&self, f: &RatFun) -> Option<Rational> {
        f.as_constant()
    }

    fn derive(&self, f: &RatFun) -> RatFun {
        f.derivative()
    }

    fn quasi_int(&self, f: &RatFun) -> RatFun {
        if f.is_zero() {
            return RatFun::zero();
        }
        if f.is_polynomial() {
            return RatFun::from_poly(f.num().integral());
        }
        self.hermite(f).integral
    }

    fn t_part(&self, f: &RatFun) -> Result<Vec<(Letter, Rational)>> {
        if f.is_polynomial() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (p, a) in self.hermite(f).simple {
            for (k, c) in a.terms() {
                let id = self.letters.id(&LetterKey { p: p.clone(), k });
                out.push((Letter(id), c.clone()));
            }
        }
        Ok(out)
    }

    fn cj_split(&self, f: &RatFun) -> Result<(Rational, Vec<(RjId, Rational)>)> {
        let pf = self.partial_fractions(f);
        let mut out = Vec::new();
        for (k, c) in pf.poly_part.terms() {
            if k > 0 {
                out.push((RjId(self.rj.id(&RjKey::Power(k))), c.clone()));
            }
        }
        for t in &pf.terms {
            for (k, c) in t.a.terms() {
                let key = RjKey::Fraction { p: t.p.clone(), j: t.j, k };
                out.push((RjId(self.rj.id(&key)), c.clone()));
            }
        }
        Ok((pf.poly_part.coeff(0), out))
    }

    fn letter_value(&self, l: Letter) -> RatFun {
        let key = self.letters.key(l.0);
        RatFun::new(UniPoly::monomial(key.k, Rational::from_integer(1.into())), key.p)
            .expect("nonzero")
    }

    fn rj_value(&self, id: RjId) -> RatFun {
        let one = Rational::from_integer(1.into());
        match self.rj.key(id.0) {
            RjKey::Power(k) => RatFun::from_poly(UniPoly::monomial(k, one)),
            RjKey::Fraction { p, j, k } => {
                RatFun::new(UniPoly::monomial(k, one), p.pow(j)).expect("nonzero")
            }
        }
    }

    fn format(&self, f: &RatFun) -> String {
        f.to_string()
    }

    fn letter_count(&self) -> usize {
        self.letters.len()
    }

    fn rj_count(&self) -> usize {
        self.rj.len()
    }
}

/// Reassembles a letter expansion into a rational function.
pub fn reassemble_letters(base: &RationalBase, t: &[(Letter, Rational)]) -> RatFun {
    t.iter()
        .fold(RatFun::zero(), |acc, (l, c)| &acc + &base.letter_value(*l).scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, rf};

    #[test]
    fn quasi_int_examples() {
        let b = RationalBase::new();
        assert_eq!(b.quasi_int(&rf("x")), rf("x^2/2"));
        assert_eq!(b.quasi_int(&rf("1/x^2")), rf("-1/x"));
        assert_eq!(b.quasi_int(&rf("1/x")), RatFun::zero());
        assert_eq!(b.quasi_int(&rf("-1/(x+1)^2")), rf("1/(x+1)"));
    }

    #[test]
    fn t_part_examples() {
        let b = RationalBase::new();
        let t = b.t_part(&rf("1/(x*(x+1))")).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(b.letter_value(t[0].0), rf("1/x"));
        assert_eq!(t[0].1, q(1));
        assert_eq!(b.letter_value(t[1].0), rf("1/(x+1)"));
        assert_eq!(t[1].1, q(-1));
        assert!(b.t_part(&rf("1/x^2")).unwrap().is_empty());
        let t = b.t_part(&rf("(2*x+1)/(x^2+1)")).unwrap();
        let mut vals: Vec<_> = t.iter().map(|(l, c)| (b.letter_value(*l), c.clone())).collect();
        vals.sort();
        assert_eq!(vals, vec![(rf("1/(x^2+1)"), q(1)), (rf("x/(x^2+1)"), q(2))]);
    }

    #[test]
    fn cj_split_examples() {
        let b = RationalBase::new();
        let (c, j) = b.cj_split(&rf("3+1/x")).unwrap();
        assert_eq!(c, q(3));
        assert_eq!(j.len(), 1);
        assert_eq!(b.rj_value(j[0].0), rf("1/x"));
        assert_eq!(b.cj_split(&rf("5")).unwrap(), (q(5), vec![]));
        let (c, j) = b.cj_split(&rf("x")).unwrap();
        assert_eq!(c, q(0));
        assert_eq!(b.rj_value(j[0].0), rf("x"));
    }

    #[test]
    fn hermite_on_repeated_irreducible_quadratic() {
        let b = RationalBase::new();
        let f = rf("(x^3+2)/(x^2+1)^3");
        let qf = b.quasi_int(&f);
        let t = reassemble_letters(&b, &b.t_part(&f).unwrap());
        assert_eq!(&b.derive(&qf) + &t, f);
        assert!(b.quasi_int(&t).is_zero());
    }

    #[test]
    fn pinned_letters_keep_order() {
        let b = RationalBase::with_letters(&[rf("1/(x+1)"), rf("1/x")]).unwrap();
        assert_eq!(b.letter_value(Letter(0)), rf("1/(x+1)"));
        assert_eq!(b.pin_letter(&rf("1/x")).unwrap(), Letter(1));
        assert!(b.pin_letter(&rf("2/x")).is_err());
    }
}
