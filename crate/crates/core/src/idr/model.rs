//! The homomorphism into `ℚ((x))[ln x]` for the rational base ring and the
//! closure obtained by substituting the model values of all constants.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::{Acc, IdrElem, IdrRing};
use crate::arith::{RatFun, Rational};
use crate::basering::{expand_ratfun, laurent_evaluate, laurent_integrate, BaseRing, LaurentLog, RationalBase};
use crate::constants::ConstSym;
use crate::error::Result;
use crate::mpoly::Mono;
use crate::words::Word;

type Elem = IdrElem<RatFun>;

/// Memo of nested integrals and letter expansions at a fixed truncation.
struct Model<'a> {
    ring: &'a IdrRing<RationalBase>,
    n: i64,
    sigma: HashMap<Word, LaurentLog>,
}

impl<'a> Model<'a> {
    fn new(ring: &'a IdrRing<RationalBase>, n: i64) -> Self {
        Self { ring, n, sigma: HashMap::new() }
    }

    fn phi(&self, f: &RatFun) -> LaurentLog {
        expand_ratfun(f, self.n)
    }

    /// `∫ a_{w₁} ∫ a_{w₂} ⋯ ∫ a_{wₙ}` in the model.
    fn sigma(&mut self, w: &Word) -> LaurentLog {
        if w.is_empty() {
            return LaurentLog::one();
        }
        if let Some(s) = self.sigma.get(w) {
            return s.clone();
        }
        let inner = self.sigma(&w.tail());
        let letter = self.phi(&self.ring.base().letter_value(w.first().expect("nonempty")));
        let s = laurent_integrate(&(&letter * &inner));
        self.sigma.insert(w.clone(), s.clone());
        s
    }

    fn value(&mut self, s: &ConstSym) -> Result<Rational> {
        match s {
            ConstSym::C1(g) => {
                let f = self.phi(&self.ring.base().rj_value(g.rj));
                let sw = self.sigma(&g.word);
                laurent_evaluate(&(&f * &sw))
            }
            ConstSym::C2(g) => {
                let (v, w) = (self.sigma(g.v()), self.sigma(g.w()));
                laurent_evaluate(&(&v * &w))
            }
        }
    }
}

impl IdrRing<RationalBase> {
    /// Image of `a` under the unique homomorphism extending the Laurent
    /// expansion at `0`, with series truncated below `x^n`.
    pub fn eta_model(&self, a: &Elem, n: i64) -> Result<LaurentLog> {
        self.check(a)?;
        let mut model = Model::new(self, n);
        let mut values: HashMap<ConstSym, Rational> = HashMap::new();
        let mut out = LaurentLog::zero();
        for ((c, w), f0) in &a.terms {
            let mut k = Rational::one();
            for (s, e) in c.factors() {
                if !values.contains_key(s) {
                    values.insert(s.clone(), model.value(s)?);
                }
                k *= num_traits::pow(values[s].clone(), *e as usize);
            }
            let term = &model.phi(f0) * &model.sigma(w);
            out = &out + &term.scale(&k);
        }
        Ok(out)
    }

    /// Model value of a single constant symbol.
    pub fn constant_value(&self, s: &ConstSym, n: i64) -> Result<Rational> {
        Model::new(self, n).value(s)
    }

    /// Model values of every constant symbol occurring in `a`.
    pub fn closure_constants(&self, a: &Elem, n: i64) -> Result<BTreeMap<ConstSym, Rational>> {
        self.check(a)?;
        let mut model = Model::new(self, n);
        let mut out = BTreeMap::new();
        for (c, _) in a.terms.keys() {
            for (s, _) in c.factors() {
                if !out.contains_key(s) {
                    out.insert(s.clone(), model.value(s)?);
                }
            }
        }
        Ok(out)
    }

    /// Replaces every constant symbol by its model value.
    pub fn closure_reduce(&self, a: &Elem, n: i64) -> Result<Elem> {
        let values = self.closure_constants(a, n)?;
        let mut acc = Acc::new(self.base());
        for ((c, w), f0) in &a.terms {
            let k = c
                .factors()
                .iter()
                .fold(Rational::one(), |k, (s, e)| k * num_traits::pow(values[s].clone(), *e as usize));
            acc.push(Mono::one(), w.clone(), self.base().scale(f0, &k));
        }
        Ok(acc.finish(self.id))
    }
}
