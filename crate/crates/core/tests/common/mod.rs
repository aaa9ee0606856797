//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use idr_core::arith::{q, UniPoly};
use idr_core::basering::{expand_ratfun, laurent_evaluate, laurent_integrate};
use idr_core::constants::c2_var;
use idr_core::mpoly::Mono;
use idr_core::words::GenKey;
use idr_core::{IdrElem, IdrRing, LaurentLog, RatFun, Rational, RationalBase, Word};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ids(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|l| l.0).collect()
}

pub fn word(ids: &[u32]) -> Word {
    Word::from_ids(ids)
}

// ---------------------------------------------------------------------------
// Words

/// Every interleaving of `u` and `v`, found by choosing which output
/// positions come from `u`.
pub fn brute_shuffle(u: &[u32], v: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    let n = u.len() + v.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Vec::with_capacity(n);
        for p in 0..n {
            if mask >> p & 1 == 1 {
                w.push(u[i]);
                i += 1;
            } else {
                w.push(v[j]);
                j += 1;
            }
        }
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

pub fn brute_max_shuffle(u: &[u32], v: &[u32]) -> (Vec<u32>, u64) {
    let (w, c) = brute_shuffle(u, v).into_iter().next_back().expect("nonempty");
    (w, c)
}

/// Splits the positions of `w` along a bitmask.
fn colour(w: &[u32], mask: u32) -> (Vec<u32>, Vec<u32>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (p, &l) in w.iter().enumerate() {
        if mask >> p & 1 == 1 {
            a.push(l);
        } else {
            b.push(l);
        }
    }
    (a, b)
}

/// Nonempty and never the maximal shuffle of two nonempty words.
pub fn brute_is_lyndon(w: &[u32]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    (1u32..(1 << n) - 1).all(|mask| {
        let (a, b) = colour(w, mask);
        brute_max_shuffle(&a, &b).0 != w
    })
}

pub fn dlex_lt(a: &[u32], b: &[u32]) -> bool {
    (a.len(), a) < (b.len(), b)
}

/// Membership in the generating set, straight from its definition.
pub fn brute_in_s(v: &[u32], w: &[u32]) -> bool {
    if !brute_is_lyndon(v) {
        return false;
    }
    let n = w.len();
    (1u32..(1 << n) - 1).all(|mask| {
        let (w1, w2) = colour(w, mask);
        !(dlex_lt(&w1, v) && brute_max_shuffle(&w1, &w2).0 == w)
    })
}

pub fn all_words(letters: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..letters {
                let mut x: Vec<u32> = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Symbolic evaluation constants e(u, v)

/// Unordered pair of words, stored with the dlex-smaller one first.
pub type Sym = (Vec<u32>, Vec<u32>);
pub type SMono = Vec<Sym>;
pub type SPoly = BTreeMap<SMono, Rational>;

pub fn sym(u: &[u32], v: &[u32]) -> Sym {
    if dlex_lt(v, u) {
        (v.to_vec(), u.to_vec())
    } else {
        (u.to_vec(), v.to_vec())
    }
}

fn add_term(p: &mut SPoly, m: SMono, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(m.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

pub fn sadd(p: &SPoly, r: &SPoly, sign: i64) -> SPoly {
    let mut out = p.clone();
    for (m, c) in r {
        add_term(&mut out, m.clone(), c * q(sign));
    }
    out
}

pub fn smul(p: &SPoly, r: &SPoly) -> SPoly {
    let mut out = SPoly::new();
    for (a, x) in p {
        for (b, y) in r {
            let mut m = a.clone();
            m.extend(b.iter().cloned());
            m.sort();
            add_term(&mut out, m, x * y);
        }
    }
    out
}

/// `e(s, t)` for linear combinations `s`, `t`; any pair with an empty word
/// vanishes because the evaluation of an integral is zero.
fn e_lin(s: &BTreeMap<Vec<u32>, u64>, t: &BTreeMap<Vec<u32>, u64>) -> SPoly {
    let mut out = SPoly::new();
    for (u, a) in s {
        for (v, b) in t {
            if u.is_empty() || v.is_empty() {
                continue;
            }
            add_term(&mut out, vec![sym(u, v)], q((a * b) as i64));
        }
    }
    out
}

fn single(w: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    BTreeMap::from([(w.to_vec(), 1)])
}

/// The relation among evaluation constants obtained by evaluating
/// `σ(f)σ(g)σ(h)` in two ways.
pub fn brute_const_rel(f: &[u32], g: &[u32], h: &[u32]) -> SPoly {
    let (n, m, l) = (f.len(), g.len(), h.len());
    let mut r = sadd(&e_lin(&brute_shuffle(f, g), &single(h)), &e_lin(&single(f), &brute_shuffle(g, h)), -1);
    for j in 0..m {
        for i in 0..n {
            let a = e_lin(&single(&f[i..]), &single(&g[j..]));
            let b = e_lin(&brute_shuffle(&f[..i], &g[..j]), &single(h));
            r = sadd(&r, &smul(&a, &b), 1);
        }
        for k in 0..l {
            let a = e_lin(&single(f), &brute_shuffle(&g[..j], &h[..k]));
            let b = e_lin(&single(&g[j..]), &single(&h[k..]));
            r = sadd(&r, &smul(&a, &b), -1);
        }
    }
    r
}

/// Evaluates a symbolic polynomial given values of the pairs.
pub fn seval(p: &SPoly, mut value: impl FnMut(&Sym) -> Rational) -> Rational {
    let mut total = Rational::zero();
    for (m, c) in p {
        let mut t = c.clone();
        for s in m {
            t *= value(s);
        }
        total += t;
    }
    total
}

/// Converts a library constant polynomial over `c(V|W)` symbols to the
/// symbolic representation.
pub fn from_const_poly(p: &idr_core::ConstPoly) -> SPoly {
    let mut out = SPoly::new();
    for (mono, c) in p.terms() {
        let mut m = SMono::new();
        for (s, e) in mono.factors() {
            let g = s.as_c2().expect("only c(V|W) symbols");
            for _ in 0..*e {
                m.push(sym(&ids(g.v()), &ids(g.w())));
            }
        }
        m.sort();
        add_term(&mut out, m, c.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Laurent model of nested integrals

/// `σ(w)` as truncated series, with `E` the `x⁰ ln⁰` coefficient.
pub struct SeriesOracle {
    letters: Vec<RatFun>,
    n: i64,
    memo: HashMap<Vec<u32>, LaurentLog>,
}

impl SeriesOracle {
    pub fn new(letters: Vec<RatFun>, n: i64) -> Self {
        Self { letters, n, memo: HashMap::new() }
    }

    pub fn sigma(&mut self, w: &[u32]) -> LaurentLog {
        if w.is_empty() {
            return LaurentLog::one();
        }
        if let Some(s) = self.memo.get(w) {
            return s.clone();
        }
        let head = expand_ratfun(&self.letters[w[0] as usize], self.n);
        let s = laurent_integrate(&(&head * &self.sigma(&w[1..])));
        self.memo.insert(w.to_vec(), s.clone());
        s
    }

    pub fn e(&mut self, u: &[u32], v: &[u32]) -> Rational {
        let p = &self.sigma(u) * &self.sigma(v);
        laurent_evaluate(&p).expect("window large enough")
    }
}

// ---------------------------------------------------------------------------
// Random inputs

const FACTORS: [&[i64]; 5] = [&[0, 1], &[1, 1], &[-2, 1], &[1, 0, 1], &[3, 2]];

/// A random rational function with integer coefficients of height at most 10
/// and denominator built from a few fixed irreducible factors.
pub fn random_ratfun(rng: &mut Rng8) -> RatFun {
    loop {
        let deg = rng.gen_range(0..=3);
        let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
        let num = UniPoly::from_i64s(&cs);
        if num.is_zero() {
            continue;
        }
        let mut den = UniPoly::one();
        for _ in 0..rng.gen_range(0..=2) {
            let f = UniPoly::from_i64s(FACTORS[rng.gen_range(0..FACTORS.len())]);
            den = &den * &f.pow(rng.gen_range(1..=2));
        }
        return RatFun::new(num, den).expect("nonzero denominator");
    }
}

pub fn random_word(rng: &mut Rng8, letters: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    word(&(0..len).map(|_| rng.gen_range(0..letters)).collect::<Vec<_>>())
}

pub fn random_nonempty_word(rng: &mut Rng8, letters: u32, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    word(&(0..len).map(|_| rng.gen_range(0..letters)).collect::<Vec<_>>())
}

/// The two-letter rational test ring with `a = 1/x`, `b = 1/(x+1)`.
pub fn letters() -> Vec<RatFun> {
    vec![idr_core::arith::rf("1/x"), idr_core::arith::rf("1/(x+1)")]
}

pub fn ring(mode: idr_core::Mode) -> IdrRing<RationalBase> {
    IdrRing::new(RationalBase::with_letters(&letters()).unwrap(), mode)
}

/// A sum of up to `max_terms` random terms `f ⊗ w`, some multiplied by a
/// product constant `c(u|v)`.
pub fn random_elem(ring: &IdrRing<RationalBase>, rng: &mut Rng8, max_terms: usize, max_len: usize) -> IdrElem<RatFun> {
    let mut a = ring.zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let w = random_word(rng, 2, max_len);
        let mut t = ring.term(Mono::one(), w, random_ratfun(rng));
        if rng.gen_bool(0.25) {
            let u = random_nonempty_word(rng, 2, 2);
            let v = random_nonempty_word(rng, 2, 2);
            let c = ring.constant(&c2_var(GenKey::new(u, v).unwrap())).unwrap();
            t = ring.mul(&t, &c).unwrap();
        }
        a = ring.add(&a, &t).unwrap();
    }
    a
}

