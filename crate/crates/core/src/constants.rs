//! Constant symbols and their polynomial ring.
//!
//! Two kinds of generators occur: `eps(J:k;W:w)`, the evaluation of the basis
//! element `k` of the image of the quasi-integration times the nested integral
//! over `w`, and `c(V|W)`, the evaluation of the product of two nested
//! integrals. The latter satisfy the relations built by [`relation_r`]; every
//! `c(V|W)` outside the generating set `S` (see [`crate::words::is_in_s`]) is
//! rewritten in terms of smaller ones.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{IdrError, Result};
use crate::mpoly::{Mono, Poly};
use crate::shuffle::{shuffle_mul, TensorElem};
use crate::words::{find_decomposition_below, is_lyndon, split_max_shuffle, GenKey, Word};

/// Identifier of a basis element of the image of the quasi-integration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RjId(pub u32);

/// `eps(f ⊗ w)` for a basis element `f` and a (possibly empty) word `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct C1Gen {
    pub rj: RjId,
    pub word: Word,
}

pub type C2Gen = GenKey;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ConstSym {
    C1(C1Gen),
    C2(C2Gen),
}

impl ConstSym {
    pub fn as_c2(&self) -> Option<&C2Gen> {
        match self {
            ConstSym::C2(g) => Some(g),
            ConstSym::C1(_) => None,
        }
    }

    pub fn as_c1(&self) -> Option<&C1Gen> {
        match self {
            ConstSym::C1(g) => Some(g),
            ConstSym::C2(_) => None,
        }
    }
}

impl fmt::Display for ConstSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstSym::C1(g) => {
                write!(f, "eps(J:{};W:", g.rj.0)?;
                for l in g.word.letters() {
                    write!(f, "{l}")?;
                }
                f.write_str(")")
            }
            ConstSym::C2(g) => write!(f, "{g}"),
        }
    }
}

pub type ConstMono = Mono<ConstSym>;
pub type ConstPoly = Poly<ConstSym>;

pub fn c2_var(g: C2Gen) -> ConstPoly {
    ConstPoly::var(ConstSym::C2(g))
}

pub fn c1_var(rj: RjId, word: Word) -> ConstPoly {
    ConstPoly::var(ConstSym::C1(C1Gen { rj, word }))
}

/// Canonical key for the symmetric constant `c(u, v)`.
pub fn c2gen_canonical(u: Word, v: Word) -> Result<C2Gen> {
    GenKey::new(u, v)
}

/// Bilinear expansion of `eps(s ⊙ t)`.
pub fn epsilon_expand(s: &TensorElem, t: &TensorElem) -> Result<ConstPoly> {
    let mut out = ConstPoly::zero();
    for (u, a) in s.terms() {
        for (v, b) in t.terms() {
            let g = GenKey::new(u.clone(), v.clone())?;
            out.add_term(Mono::var(ConstSym::C2(g)), a * b);
        }
    }
    Ok(out)
}

fn word(w: Word) -> TensorElem {
    TensorElem::word(w)
}

/// The relation among the `c` constants attached to three nonempty words.
///
/// With `f, g, h` of lengths `n, m, l` it is
///
/// ```text
/// eps((f ш g) ⊙ h) - eps(f ⊙ (g ш h))
///   + Σ_{j<m} Σ_{i<n, i+j>0} eps(f[i..] ⊙ g[j..]) eps((f[..i] ш g[..j]) ⊙ h)
///   - Σ_{j<m} Σ_{k<l, j+k>0} eps(f ⊙ (g[..j] ш h[..k])) eps(g[j..] ⊙ h[k..])
/// ```
///
/// It vanishes identically when `f = h`; arguments with `v1 >_dlex v3` are rejected.
pub fn relation_r(v1: &Word, v2: &Word, v3: &Word) -> Result<ConstPoly> {
    if v1.is_empty() || v2.is_empty() || v3.is_empty() {
        return Err(IdrError::EmptyWord);
    }
    if v1 > v3 {
        return Err(IdrError::OrderViolation(format!("{v1} is dlex-greater than {v3}")));
    }
    let (f, g, h) = (v1, v2, v3);
    let (n, m, l) = (f.len(), g.len(), h.len());
    let mut r = epsilon_expand(&shuffle_mul(&word(f.clone()), &word(g.clone())), &word(h.clone()))?;
    r = r.sub(&epsilon_expand(&word(f.clone()), &shuffle_mul(&word(g.clone()), &word(h.clone())))?);
    for j in 0..m {
        let lo = usize::from(j == 0);
        for i in lo..n {
            let a = epsilon_expand(&word(f.suffix_from(i)), &word(g.suffix_from(j)))?;
            let pre = shuffle_mul(&word(f.prefix(i)), &word(g.prefix(j)));
            let b = epsilon_expand(&pre, &word(h.clone()))?;
            r = r.add(&a.mul(&b));
        }
        for k in lo..l {
            let pre = shuffle_mul(&word(g.prefix(j)), &word(h.prefix(k)));
            let a = epsilon_expand(&word(f.clone()), &pre)?;
            let b = epsilon_expand(&word(g.suffix_from(j)), &word(h.suffix_from(k)))?;
            r = r.sub(&a.mul(&b));
        }
    }
    Ok(r)
}

/// The ≺-greatest `c` generator occurring in `p`.
pub fn leading_c2(p: &ConstPoly) -> Option<C2Gen> {
    p.terms()
        .flat_map(|(m, _)| m.factors().iter().filter_map(|(s, _)| s.as_c2()))
        .max()
        .cloned()
}

/// Solves `p = 0` for the generator `g`, which must occur only linearly and
/// alone in its monomial. Returns the expression `g` equals.
pub fn solve_for(p: &ConstPoly, g: &C2Gen) -> Result<ConstPoly> {
    let sym = ConstSym::C2(g.clone());
    let lead = Mono::var(sym.clone());
    let k = p.coeff(&lead);
    if k.is_zero() {
        return Err(IdrError::Invalid(format!("{g} does not occur linearly in the relation")));
    }
    let mut rest = ConstPoly::zero();
    for (m, c) in p.terms() {
        if *m == lead {
            continue;
        }
        if m.exponent_of(&sym) > 0 {
            return Err(IdrError::Invalid(format!("{g} occurs nonlinearly in the relation")));
        }
        rest.add_term(m.clone(), c.clone());
    }
    Ok(rest.scale(&(-k.recip())))
}

/// The canonical relation whose leading generator is `g`, or `None` if `g`
/// lies in the generating set.
pub fn canonical_relation(g: &C2Gen) -> Option<(Word, Word, Word)> {
    let (v, w) = (g.v(), g.w());
    if !is_lyndon(v) {
        let (v1, v2) = split_max_shuffle(v).expect("nonempty").expect("not Lyndon");
        return Some((v1, v2, w.clone()));
    }
    find_decomposition_below(w, v).map(|(w1, w2)| (w1, w2, v.clone()))
}

/// One rewriting step: `g` itself when irreducible, else the expression
/// obtained by solving its canonical relation, in ≺-smaller generators.
pub fn reduce_c2gen(g: &C2Gen) -> ConstPoly {
    match canonical_relation(g) {
        None => c2_var(g.clone()),
        Some((v1, v2, v3)) => {
            let r = relation_r(&v1, &v2, &v3).expect("canonical triple is valid");
            debug_assert_eq!(leading_c2(&r).as_ref(), Some(g));
            let sol = solve_for(&r, g).expect("leading generator occurs linearly");
            debug_assert!(sol.vars().iter().filter_map(|s| s.as_c2()).all(|h| h < g));
            sol
        }
    }
}

enum Rules {
    Canonical,
    Table(HashMap<C2Gen, ConstPoly>),
}

/// Rewrites `c` generators to normal form, memoizing the fully reduced image
/// of each generator. Safe to share between threads.
pub struct C2Reducer {
    rules: Rules,
    memo: RwLock<HashMap<C2Gen, ConstPoly>>,
}

impl C2Reducer {
    /// Reducer using [`reduce_c2gen`]; its irreducible generators are exactly `S`.
    pub fn canonical() -> Self {
        Self { rules: Rules::Canonical, memo: RwLock::new(HashMap::new()) }
    }

    /// Reducer using an explicit table `g ↦ expression in smaller generators`.
    /// Generators absent from the table are irreducible.
    pub fn from_table(table: HashMap<C2Gen, ConstPoly>) -> Self {
        Self { rules: Rules::Table(table), memo: RwLock::new(HashMap::new()) }
    }

    fn rule(&self, g: &C2Gen) -> Option<ConstPoly> {
        match &self.rules {
            Rules::Canonical => canonical_relation(g).is_some().then(|| reduce_c2gen(g)),
            Rules::Table(t) => t.get(g).cloned(),
        }
    }

    /// Fully reduced image of a single generator.
    pub fn normal_form_of(&self, g: &C2Gen) -> ConstPoly {
        if let Some(p) = self.memo.read().expect("memo lock").get(g) {
            return p.clone();
        }
        let nf = match self.rule(g) {
            None => c2_var(g.clone()),
            Some(rhs) => self.normalize(&rhs),
        };
        self.memo.write().expect("memo lock").insert(g.clone(), nf.clone());
        nf
    }

    /// Replaces every reducible `c` generator by its normal form; `eps`
    /// generators are left alone.
    pub fn normalize(&self, p: &ConstPoly) -> ConstPoly {
        p.eval_hom(|s| match s {
            ConstSym::C2(g) => self.normal_form_of(g),
            ConstSym::C1(_) => ConstPoly::var(s.clone()),
        })
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }
}

/// The process-wide canonical reducer, so that every ring context shares one memo.
pub fn shared_canonical_reducer() -> Arc<C2Reducer> {
    static R: OnceLock<Arc<C2Reducer>> = OnceLock::new();
    Arc::clone(R.get_or_init(|| Arc::new(C2Reducer::canonical())))
}

/// Normal form with respect to the canonical rewriting: only generators of `S`
/// remain.
pub fn c2_normalize(p: &ConstPoly) -> ConstPoly {
    shared_canonical_reducer().normalize(p)
}

/// Coefficient of `g` in the linear part of `p` (used for leading-term checks).
pub fn linear_coeff(p: &ConstPoly, g: &C2Gen) -> Rational {
    p.coeff(&Mono::var(ConstSym::C2(g.clone())))
}

/// Whether `g` occurs in `p` only in the monomial `g^1`.
pub fn occurs_only_linearly(p: &ConstPoly, g: &C2Gen) -> bool {
    let sym = ConstSym::C2(g.clone());
    let lead = Mono::var(sym.clone());
    p.terms().all(|(m, _)| *m == lead || m.exponent_of(&sym) == 0) && !p.coeff(&lead).is_zero()
}
