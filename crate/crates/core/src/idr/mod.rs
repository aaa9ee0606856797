//! The free commutative integro-differential ring over a base ring.
//!
//! An element is a finite sum of terms `f₀ ⊗ c ⊗ w`: a base-ring coefficient,
//! a monomial in the constant symbols and a word of letters standing for the
//! nested integral `∫ a_{w₁} ∫ a_{w₂} ⋯ ∫ a_{wₙ}`. The word part multiplies
//! by the shuffle product corrected by `c` constants, which are kept in normal
//! form after every product.
//!
//! Three flavors share this representation (see [`Mode`]); each ring context
//! fixes one of them and elements of different contexts never mix.

mod model;
mod render;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::basering::BaseRing;
use crate::constants::{c1_var, shared_canonical_reducer, C2Reducer, ConstMono, ConstPoly, ConstSym};
use crate::error::{IdrError, Result};
use crate::mpoly::Mono;
use crate::words::{shuffle_multiset, GenKey, Letter, Word};

pub use render::{AlphabetEntry, C1Json, C2Json, IdrJson, TermJson};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// No relations on the evaluation constants beyond associativity.
    Free,
    /// Evaluation respects the quasi-integration: `E(Qf) = 0`.
    #[serde(rename = "q")]
    QRespecting,
    /// Evaluation is multiplicative.
    #[serde(rename = "ida")]
    Multiplicative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Free => "free",
            Mode::QRespecting => "q",
            Mode::Multiplicative => "ida",
        })
    }
}

impl FromStr for Mode {
    type Err = IdrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Mode::Free),
            "q" => Ok(Mode::QRespecting),
            "ida" => Ok(Mode::Multiplicative),
            _ => Err(IdrError::Invalid(format!("unknown mode `{s}` (expected free, q or ida)"))),
        }
    }
}

pub type TermKey = (ConstMono, Word);

/// An element of a ring context. Terms are keyed by constant monomial and word
/// and never carry a zero coefficient.
#[derive(Clone, PartialEq)]
pub struct IdrElem<E> {
    ring: u64,
    terms: BTreeMap<TermKey, E>,
}

impl<E> IdrElem<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ConstMono, &Word, &E)> {
        self.terms.iter().map(|((c, w), f)| (c, w, f))
    }

    pub fn coeff(&self, c: &ConstMono, w: &Word) -> Option<&E> {
        self.terms.get(&(c.clone(), w.clone()))
    }

    pub fn ring_id(&self) -> u64 {
        self.ring
    }
}

impl<E: fmt::Debug> fmt::Debug for IdrElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|((c, w), e)| (format!("{c} ⊗ {w}"), e))).finish()
    }
}

static NEXT_RING: AtomicU64 = AtomicU64::new(1);

/// A ring context: base ring (with its letter registry), mode and the shared
/// `c` reducer.
pub struct IdrRing<B: BaseRing> {
    base: Arc<B>,
    mode: Mode,
    id: u64,
    reducer: Arc<C2Reducer>,
}

type Elem<B> = IdrElem<<B as BaseRing>::Elem>;

struct Acc<'a, B: BaseRing> {
    base: &'a B,
    terms: BTreeMap<TermKey, B::Elem>,
}

impl<'a, B: BaseRing> Acc<'a, B> {
    fn new(base: &'a B) -> Self {
        Self { base, terms: BTreeMap::new() }
    }

    fn push(&mut self, c: ConstMono, w: Word, f: B::Elem) {
        if self.base.is_zero(&f) {
            return;
        }
        match self.terms.entry((c, w)) {
            Entry::Occupied(mut e) => {
                let s = self.base.add(e.get(), &f);
                if self.base.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(f);
            }
        }
    }

    fn push_poly(&mut self, p: &ConstPoly, w: &Word, f: &B::Elem) {
        for (m, c) in p.terms() {
            self.push(m.clone(), w.clone(), self.base.scale(f, c));
        }
    }

    fn finish(self, ring: u64) -> IdrElem<B::Elem> {
        IdrElem { ring, terms: self.terms }
    }
}

impl<B: BaseRing> IdrRing<B> {
    pub fn new(base: B, mode: Mode) -> Self {
        Self::with_base(Arc::new(base), mode)
    }

    pub fn with_base(base: Arc<B>, mode: Mode) -> Self {
        Self {
            base,
            mode,
            id: NEXT_RING.fetch_add(1, Ordering::Relaxed),
            reducer: shared_canonical_reducer(),
        }
    }

    /// A context over the same base ring and alphabet in another mode.
    pub fn with_mode(&self, mode: Mode) -> Self {
        Self {
            base: Arc::clone(&self.base),
            mode,
            id: NEXT_RING.fetch_add(1, Ordering::Relaxed),
            reducer: Arc::clone(&self.reducer),
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<B> {
        &self.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn reducer(&self) -> &C2Reducer {
        &self.reducer
    }

    fn check(&self, a: &Elem<B>) -> Result<()> {
        if a.ring == self.id {
            Ok(())
        } else {
            Err(IdrError::ContextMismatch)
        }
    }

    fn acc(&self) -> Acc<'_, B> {
        Acc::new(&self.base)
    }

    pub fn zero(&self) -> Elem<B> {
        IdrElem { ring: self.id, terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Elem<B> {
        self.embed(self.base.one())
    }

    pub fn scalar(&self, c: &Rational) -> Elem<B> {
        self.embed(self.base.from_rational(c))
    }

    pub fn embed(&self, f: B::Elem) -> Elem<B> {
        self.term(Mono::one(), Word::empty(), f)
    }

    /// The single term `f ⊗ c ⊗ w`, taken as given.
    pub fn term(&self, c: ConstMono, w: Word, f: B::Elem) -> Elem<B> {
        let mut acc = self.acc();
        acc.push(c, w, f);
        acc.finish(self.id)
    }

    /// A polynomial in the constant symbols, brought to normal form for this mode.
    pub fn constant(&self, p: &ConstPoly) -> Result<Elem<B>> {
        let p = self.canonical_constants(p)?;
        let mut acc = self.acc();
        acc.push_poly(&p, &Word::empty(), &self.base.one());
        Ok(acc.finish(self.id))
    }

    /// The constant part of an element lying in the constant subring: every
    /// word is empty and every coefficient a scalar.
    pub fn as_constant(&self, a: &Elem<B>) -> Option<ConstPoly> {
        let mut p = ConstPoly::zero();
        for ((c, w), f) in &a.terms {
            if !w.is_empty() {
                return None;
            }
            p.add_term(c.clone(), self.base.as_rational(f)?);
        }
        Some(p)
    }

    pub fn add(&self, a: &Elem<B>, b: &Elem<B>) -> Result<Elem<B>> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = self.acc();
        for (k, f) in a.terms.iter().chain(b.terms.iter()) {
            acc.push(k.0.clone(), k.1.clone(), f.clone());
        }
        Ok(acc.finish(self.id))
    }

    pub fn neg(&self, a: &Elem<B>) -> Elem<B> {
        self.scale(a, &-Rational::one())
    }

    pub fn sub(&self, a: &Elem<B>, b: &Elem<B>) -> Result<Elem<B>> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Elem<B>, c: &Rational) -> Elem<B> {
        let mut acc = self.acc();
        for (k, f) in &a.terms {
            acc.push(k.0.clone(), k.1.clone(), self.base.scale(f, c));
        }
        acc.finish(a.ring)
    }

    /// Multiplies every term by a base-ring element.
    pub fn mul_base(&self, a: &Elem<B>, g: &B::Elem) -> Result<Elem<B>> {
        self.check(a)?;
        let mut acc = self.acc();
        for (k, f) in &a.terms {
            acc.push(k.0.clone(), k.1.clone(), self.base.mul(f, g));
        }
        Ok(acc.finish(self.id))
    }

    /// Brings a constant polynomial to the normal form of this mode.
    pub fn canonical_constants(&self, p: &ConstPoly) -> Result<ConstPoly> {
        match self.mode {
            Mode::Multiplicative => self.project_constants(p),
            _ => self.project_constants(&self.reducer.normalize(p)),
        }
    }

    /// Applies the relations that distinguish this mode from the free one.
    /// Input `c` generators must already be normalized.
    fn project_constants(&self, p: &ConstPoly) -> Result<ConstPoly> {
        match self.mode {
            Mode::Free => Ok(p.clone()),
            Mode::QRespecting => {
                let mut out = ConstPoly::zero();
                for (m, c) in p.terms() {
                    let dead = m.factors().iter().any(|(s, _)| matches!(s, ConstSym::C1(g) if g.word.is_empty()));
                    if !dead {
                        out.add_term(m.clone(), c.clone());
                    }
                }
                Ok(out)
            }
            Mode::Multiplicative => {
                let mut out = ConstPoly::zero();
                for (m, c) in p.terms() {
                    let dead = m.factors().iter().any(|(s, _)| match s {
                        ConstSym::C2(_) => true,
                        ConstSym::C1(g) => !g.word.is_empty(),
                    });
                    if dead {
                        continue;
                    }
                    if m.degree() <= 1 {
                        out.add_term(m.clone(), c.clone());
                        continue;
                    }
                    let mut h = self.base.one();
                    for (s, e) in m.factors() {
                        let g = s.as_c1().expect("only eps symbols remain");
                        let v = self.base.rj_value(g.rj);
                        for _ in 0..*e {
                            h = self.base.mul(&h, &v);
                        }
                    }
                    out.add_assign(&self.eps_poly(&h, &Word::empty())?.scale(c));
                }
                Ok(out)
            }
        }
    }

    /// `eps(f ⊗ w)` expanded over the image basis. Scalars evaluate to
    /// themselves against the empty word and to zero against a nonempty one.
    fn eps_poly(&self, f: &B::Elem, w: &Word) -> Result<ConstPoly> {
        let (c0, js) = self.base.cj_split(f)?;
        let mut p = ConstPoly::zero();
        if w.is_empty() {
            p.add_term(Mono::one(), c0);
        }
        for (id, k) in js {
            p.add_assign(&c1_var(id, w.clone()).scale(&k));
        }
        Ok(p)
    }

    /// `(1 ⊗ u)·(1 ⊗ v)` as a list of (constant factor, word).
    fn word_product(&self, u: &Word, v: &Word) -> Vec<(ConstPoly, Word)> {
        let mut out: Vec<(ConstPoly, Word)> = shuffle_multiset(u, v)
            .into_iter()
            .map(|(w, m)| (ConstPoly::constant(Rational::from_integer(m.into())), w))
            .collect();
        if self.mode == Mode::Multiplicative {
            return out;
        }
        for i in 0..u.len() {
            for j in 0..v.len() {
                let g = GenKey::new(u.suffix_from(i), v.suffix_from(j)).expect("nonempty suffixes");
                let nf = self.reducer.normal_form_of(&g);
                if nf.is_zero() {
                    continue;
                }
                for (w, m) in shuffle_multiset(&u.prefix(i), &v.prefix(j)) {
                    out.push((nf.scale(&Rational::from_integer(m.into())), w));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Elem<B>, b: &Elem<B>) -> Result<Elem<B>> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = self.acc();
        let mut products: BTreeMap<(Word, Word), Vec<(ConstPoly, Word)>> = BTreeMap::new();
        for ((ca, wa), fa) in &a.terms {
            for ((cb, wb), fb) in &b.terms {
                let f = self.base.mul(fa, fb);
                if self.base.is_zero(&f) {
                    continue;
                }
                let cd = ca.mul(cb);
                let key = if wa <= wb { (wa.clone(), wb.clone()) } else { (wb.clone(), wa.clone()) };
                let prod = products.entry(key).or_insert_with_key(|(u, v)| self.word_product(u, v));
                let mut by_word: BTreeMap<&Word, ConstPoly> = BTreeMap::new();
                for (p, w) in prod.iter() {
                    by_word.entry(w).or_insert_with(ConstPoly::zero).add_assign(&p.mul_mono(&cd, &Rational::one()));
                }
                for (w, p) in by_word {
                    acc.push_poly(&self.project_constants(&p)?, w, &f);
                }
            }
        }
        Ok(acc.finish(self.id))
    }

    pub fn pow(&self, a: &Elem<B>, e: u32) -> Result<Elem<B>> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn derive(&self, a: &Elem<B>) -> Result<Elem<B>> {
        self.check(a)?;
        let mut acc = self.acc();
        let mut derivatives: HashMap<&B::Elem, B::Elem> = HashMap::new();
        let mut products: HashMap<(&B::Elem, Letter), B::Elem> = HashMap::new();
        for ((c, w), f) in &a.terms {
            let df = derivatives.entry(f).or_insert_with(|| self.base.derive(f));
            acc.push(c.clone(), w.clone(), df.clone());
            if let Some(l) = w.first() {
                let fl = products.entry((f, l)).or_insert_with(|| self.base.mul(f, &self.base.letter_value(l)));
                acc.push(c.clone(), w.tail(), fl.clone());
            }
        }
        Ok(acc.finish(self.id))
    }

    pub fn integrate(&self, a: &Elem<B>) -> Result<Elem<B>> {
        self.check(a)?;
        let mut acc = self.acc();
        for ((c, w), f) in &a.terms {
            self.integrate_term(&mut acc, c, f, w)?;
        }
        Ok(acc.finish(self.id))
    }

    /// Adds `c · ∫(f₀ ⊗ w)` to `acc`:
    ///
    /// ```text
    /// ∫(f₀ ⊗ w) = Qf₀ ⊗ w − eps(Qf₀ ⊗ w) − ∫(Qf₀·a_{w₁} ⊗ w[1..]) + Σ_l t_l ⊗ l·w
    /// ```
    ///
    /// where `f₀ − ∂Qf₀ = Σ t_l l` and, for empty `w`, the recursive term is
    /// absent and the `eps` term exists only outside the Q-respecting mode.
    fn integrate_term(&self, acc: &mut Acc<'_, B>, c: &ConstMono, f0: &B::Elem, w: &Word) -> Result<()> {
        let mut f0 = f0.clone();
        let mut w = w.clone();
        let mut sign = Rational::one();
        loop {
            let q = self.base.quasi_int(&f0);
            for (l, k) in self.base.t_part(&f0)? {
                acc.push(c.clone(), w.prepend(l), self.base.from_rational(&(&k * &sign)));
            }
            if self.base.is_zero(&q) {
                return Ok(());
            }
            acc.push(c.clone(), w.clone(), self.base.scale(&q, &sign));
            if !(w.is_empty() && self.mode == Mode::QRespecting) {
                let eps = self.eps_poly(&q, &w)?.mul_mono(c, &-sign.clone());
                acc.push_poly(&self.project_constants(&eps)?, &Word::empty(), &self.base.one());
            }
            let Some(first) = w.first() else {
                return Ok(());
            };
            f0 = self.base.mul(&q, &self.base.letter_value(first));
            w = w.tail();
            sign = -sign;
        }
    }

    /// The induced evaluation `E = id − ∫∂`, computed termwise.
    pub fn evaluate(&self, a: &Elem<B>) -> Result<Elem<B>> {
        self.check(a)?;
        let mut acc = self.acc();
        let one = self.base.one();
        for ((c, w), f0) in &a.terms {
            let d = self.base.quasi_int(&self.base.derive(f0));
            if w.is_empty() {
                let s = self.base.as_rational(&self.base.sub(f0, &d)).ok_or_else(|| {
                    IdrError::Invalid(format!("{} has no scalar evaluation", self.base.format(f0)))
                })?;
                acc.push(c.clone(), Word::empty(), self.base.from_rational(&s));
                if self.mode == Mode::QRespecting {
                    continue;
                }
            }
            let eps = self.eps_poly(&d, w)?.mul_mono(c, &Rational::one());
            acc.push_poly(&self.project_constants(&eps)?, &Word::empty(), &one);
        }
        Ok(acc.finish(self.id))
    }

    /// `f₀ · ∫f₁ ∫f₂ ⋯ ∫fₙ` for `f₁, …, fₙ` in the kernel of `Q`.
    pub fn nested_integral(&self, f0: &B::Elem, fs: &[B::Elem]) -> Result<Elem<B>> {
        let mut words: Vec<(Word, Rational)> = vec![(Word::empty(), Rational::one())];
        for f in fs {
            if !self.base.is_zero(&self.base.quasi_int(f)) {
                return Err(IdrError::NotInKernel(self.base.format(f)));
            }
            let t = self.base.t_part(f)?;
            words = words
                .iter()
                .flat_map(|(w, c)| t.iter().map(move |(l, k)| (w.concat(&Word::single(*l)), c * k)))
                .collect();
        }
        let mut acc = self.acc();
        for (w, c) in words {
            acc.push(Mono::one(), w, self.base.scale(f0, &c));
        }
        Ok(acc.finish(self.id))
    }

    /// Moves an element of the free context over the same base into this
    /// context. Only projections out of the free mode (or the identity) exist.
    pub fn project_from(&self, source: &IdrRing<B>, a: &Elem<B>) -> Result<Elem<B>> {
        source.check(a)?;
        if !Arc::ptr_eq(&self.base, &source.base) {
            return Err(IdrError::ContextMismatch);
        }
        if source.mode != Mode::Free && source.mode != self.mode {
            return Err(IdrError::UnsupportedProjection {
                from: source.mode.to_string(),
                to: self.mode.to_string(),
            });
        }
        let mut acc = self.acc();
        for ((c, w), f) in &a.terms {
            let p = self.project_constants(&ConstPoly::term(c.clone(), Rational::one()))?;
            acc.push_poly(&p, w, f);
        }
        Ok(acc.finish(self.id))
    }

    /// Rebuilds an element of this context from raw terms, normalizing the
    /// constant part.
    pub fn from_terms<I>(&self, terms: I) -> Result<Elem<B>>
    where
        I: IntoIterator<Item = (ConstMono, Word, B::Elem)>,
    {
        let mut acc = self.acc();
        for (c, w, f) in terms {
            let p = self.canonical_constants(&ConstPoly::term(c, Rational::one()))?;
            acc.push_poly(&p, &w, &f);
        }
        Ok(acc.finish(self.id))
    }
}
