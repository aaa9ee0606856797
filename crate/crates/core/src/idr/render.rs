//! Text and JSON output. Words print as `II(f₁,…,fₙ)`, the nested integral
//! `∫f₁∫f₂⋯∫fₙ` with each letter replaced by the basis element it stands for.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{IdrElem, IdrRing};
use crate::arith::fmt_rational;
use crate::basering::BaseRing;
use crate::constants::{ConstSym, RjId};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdrJson {
    pub mode: String,
    pub terms: Vec<TermJson>,
    pub alphabet: Vec<AlphabetEntry>,
    pub image_basis: Vec<AlphabetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub base: String,
    pub c1: Vec<C1Json>,
    pub c2: Vec<C2Json>,
    pub word: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Json {
    pub symbol: String,
    pub basis: u32,
    pub word: Vec<u32>,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Json {
    pub symbol: String,
    pub v: Vec<u32>,
    pub w: Vec<u32>,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetEntry {
    pub id: u32,
    pub name: String,
    pub value: String,
}

fn ids(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|l| l.0).collect()
}

fn has_inner_sign(s: &str) -> bool {
    s.char_indices().any(|(i, c)| i > 0 && (c == '+' || c == '-'))
}

impl<B: BaseRing> IdrRing<B> {
    /// `II(f₁,…,fₙ)` for a nonempty word.
    pub fn render_word(&self, w: &Word) -> String {
        let parts: Vec<String> = w.letters().iter().map(|l| self.base.describe_letter(*l)).collect();
        format!("II({})", parts.join(","))
    }

    /// Human-readable sum of terms, `0` for the zero element.
    pub fn render(&self, a: &IdrElem<B::Elem>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for ((c, w), f) in &a.terms {
            let mut rest: Vec<String> = Vec::new();
            if !c.is_one() {
                rest.push(c.to_string());
            }
            if !w.is_empty() {
                rest.push(self.render_word(w));
            }
            let (negative, head) = match self.base.as_rational(f) {
                Some(s) => {
                    let a = s.abs();
                    let head = (!a.is_one() || rest.is_empty()).then(|| fmt_rational(&a));
                    (s.is_negative(), head)
                }
                None => {
                    let text = self.base.format(f);
                    let flipped = self.base.format(&self.base.neg(f));
                    let (negative, text) = if text.starts_with('-') && !flipped.starts_with('-') {
                        (true, flipped)
                    } else {
                        (false, text)
                    };
                    let text = if !rest.is_empty() && has_inner_sign(&text) { format!("({text})") } else { text };
                    (negative, Some(text))
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let pieces: Vec<String> = head.into_iter().chain(rest).collect();
            out.push_str(&pieces.join("*"));
        }
        out
    }

    /// Letters occurring in `a`, in words or inside constants.
    pub fn letters_of(&self, a: &IdrElem<B::Elem>) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        for (c, w) in a.terms.keys() {
            out.extend(w.letters().iter().copied());
            for (s, _) in c.factors() {
                match s {
                    ConstSym::C1(g) => out.extend(g.word.letters().iter().copied()),
                    ConstSym::C2(g) => {
                        out.extend(g.v().letters().iter().copied());
                        out.extend(g.w().letters().iter().copied());
                    }
                }
            }
        }
        out
    }

    fn image_ids_of(&self, a: &IdrElem<B::Elem>) -> BTreeSet<RjId> {
        a.terms
            .keys()
            .flat_map(|(c, _)| c.factors().iter().filter_map(|(s, _)| s.as_c1().map(|g| g.rj)))
            .collect()
    }

    /// Letter names and the basis elements they stand for.
    pub fn legend(&self, a: &IdrElem<B::Elem>) -> Vec<AlphabetEntry> {
        self.letters_of(a)
            .into_iter()
            .map(|l| AlphabetEntry { id: l.0, name: l.name(), value: self.base.describe_letter(l) })
            .collect()
    }

    /// Image-basis ids used by `eps` symbols and their values.
    pub fn image_legend(&self, a: &IdrElem<B::Elem>) -> Vec<AlphabetEntry> {
        self.image_ids_of(a)
            .into_iter()
            .map(|id| AlphabetEntry { id: id.0, name: format!("J:{}", id.0), value: self.base.describe_rj(id) })
            .collect()
    }

    pub fn to_json(&self, a: &IdrElem<B::Elem>) -> IdrJson {
        let terms = a
            .terms
            .iter()
            .map(|((c, w), f)| {
                let mut c1 = Vec::new();
                let mut c2 = Vec::new();
                for (s, e) in c.factors() {
                    match s {
                        ConstSym::C1(g) => c1.push(C1Json {
                            symbol: s.to_string(),
                            basis: g.rj.0,
                            word: ids(&g.word),
                            exponent: *e,
                        }),
                        ConstSym::C2(g) => c2.push(C2Json {
                            symbol: s.to_string(),
                            v: ids(g.v()),
                            w: ids(g.w()),
                            exponent: *e,
                        }),
                    }
                }
                TermJson { base: self.base.format(f), c1, c2, word: ids(w) }
            })
            .collect();
        IdrJson {
            mode: self.mode.to_string(),
            terms,
            alphabet: self.legend(a),
            image_basis: self.image_legend(a),
        }
    }
}
