//! Words over a totally ordered alphabet of letter ids.
//!
//! Letters compare by id, so the alphabet order is the order in which letters
//! were registered with the base ring. Words compare degree-lexicographically
//! (`Ord` on [`Word`]); plain lexicographic comparison is [`Word::lex_cmp`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{IdrError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub u32);

impl Letter {
    /// Short display name: `a`..`z`, then `[26]`, `[27]`, ...
    pub fn name(self) -> String {
        if self.0 < 26 {
            char::from(b'a' + self.0 as u8).to_string()
        } else {
            format!("[{}]", self.0)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Self(ids.iter().map(|&i| Letter(i)).collect())
    }

    pub fn single(l: Letter) -> Self {
        Self(vec![l])
    }

    /// Parses `a`..`z` into letters 0..25; the empty string and `∅` give the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" {
            return Ok(Self::empty());
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                if c.is_ascii_lowercase() {
                    Ok(Letter(c as u32 - 'a' as u32))
                } else {
                    Err(IdrError::Parse { offset: i, message: format!("'{c}' is not a letter a-z") })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// Subword `self[from..to]` (0-based, half-open).
    pub fn slice(&self, from: usize, to: usize) -> Self {
        Self(self.0[from..to].to_vec())
    }

    pub fn tail(&self) -> Self {
        self.slice(1.min(self.len()), self.len())
    }

    pub fn prefix(&self, n: usize) -> Self {
        self.slice(0, n)
    }

    pub fn suffix_from(&self, n: usize) -> Self {
        self.slice(n, self.len())
    }

    pub fn prepend(&self, l: Letter) -> Self {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().max().copied()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        dlex_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Degree-lexicographic comparison: length first, then lexicographic.
pub fn dlex_cmp(v: &Word, w: &Word) -> Ordering {
    v.len().cmp(&w.len()).then_with(|| v.0.cmp(&w.0))
}

/// All interleavings of `v` and `w` with their multiplicities.
pub fn shuffle_multiset(v: &Word, w: &Word) -> BTreeMap<Word, u64> {
    let mut out = BTreeMap::new();
    let mut buf = Vec::with_capacity(v.len() + w.len());
    fn go(a: &[Letter], b: &[Letter], buf: &mut Vec<Letter>, out: &mut BTreeMap<Word, u64>) {
        if a.is_empty() || b.is_empty() {
            let mut word = buf.clone();
            word.extend_from_slice(a);
            word.extend_from_slice(b);
            *out.entry(Word(word)).or_insert(0) += 1;
            return;
        }
        buf.push(a[0]);
        go(&a[1..], b, buf, out);
        buf.pop();
        buf.push(b[0]);
        go(a, &b[1..], buf, out);
        buf.pop();
    }
    go(&v.0, &w.0, &mut buf, &mut out);
    out
}

/// Number of ways to interleave `v` and `w` into `u`.
pub fn interleaving_count(v: &Word, w: &Word, u: &Word) -> u64 {
    let (n, m) = (v.len(), w.len());
    if n + m != u.len() {
        return 0;
    }
    let mut dp = vec![vec![0u64; m + 1]; n + 1];
    dp[0][0] = 1;
    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let target = u.0[i + j - 1];
            let mut c = 0;
            if i > 0 && v.0[i - 1] == target {
                c += dp[i - 1][j];
            }
            if j > 0 && w.0[j - 1] == target {
                c += dp[i][j - 1];
            }
            dp[i][j] = c;
        }
    }
    dp[n][m]
}

/// Lexicographically greatest shuffle of `v` and `w`, with its multiplicity.
///
/// Greedy: always emit from the remaining word that is lexicographically
/// greater as a whole.
pub fn max_shuffle(v: &Word, w: &Word) -> (Word, u64) {
    let (mut a, mut b) = (&v.0[..], &w.0[..]);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while !a.is_empty() || !b.is_empty() {
        if a >= b {
            out.push(a[0]);
            a = &a[1..];
        } else {
            out.push(b[0]);
            b = &b[1..];
        }
    }
    let u = Word(out);
    let mult = interleaving_count(v, w, &u);
    (u, mult)
}

/// Nonempty and strictly smaller than each of its proper nonempty suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w.0[i..] > w.0[..])
}

/// Chen–Fox–Lyndon factorization via Duval's algorithm; factors are
/// non-increasing.
pub fn lyndon_factorization(w: &Word) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Err(IdrError::EmptyWord);
    }
    let s = &w.0;
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            out.push(Word(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    Ok(out)
}

/// For non-Lyndon `v`, the contiguous split `v = v1 v2` with smallest `|v1|`
/// whose maximal shuffle is `v`. `None` when `v` is Lyndon.
pub fn split_max_shuffle(v: &Word) -> Result<Option<(Word, Word)>> {
    if v.is_empty() {
        return Err(IdrError::EmptyWord);
    }
    if is_lyndon(v) {
        return Ok(None);
    }
    for i in 1..v.len() {
        let (v1, v2) = (v.prefix(i), v.suffix_from(i));
        if max_shuffle(&v1, &v2).0 == *v {
            return Ok(Some((v1, v2)));
        }
    }
    unreachable!("every non-Lyndon word splits contiguously into a maximal shuffle")
}

/// Every pair `(w1, w2)` of nonempty words obtained by 2-coloring the
/// positions of `w` such that the maximal shuffle of the pair is `w`.
/// Sorted by `(w1, w2)` in dlex order, without duplicates.
pub fn max_shuffle_decompositions(w: &Word) -> Vec<(Word, Word)> {
    let n = w.len();
    let mut out = Vec::new();
    if n < 2 || n > 30 {
        assert!(n <= 30, "word too long for exhaustive decomposition");
        return out;
    }
    for mask in 1u32..(1 << n) - 1 {
        let (w1, w2) = split_by_mask(w, mask);
        if max_shuffle(&w1, &w2).0 == *w {
            out.push((w1, w2));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn split_by_mask(w: &Word, mask: u32) -> (Word, Word) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, l) in w.0.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a.push(*l);
        } else {
            b.push(*l);
        }
    }
    (Word(a), Word(b))
}

/// The smallest (dlex on `(w1, w2)`) decomposition of `w` as a maximal shuffle
/// with `w1 <_dlex bound`, found by exhaustive 2-coloring.
pub fn find_decomposition_below(w: &Word, bound: &Word) -> Option<(Word, Word)> {
    let n = w.len();
    let mut best: Option<(Word, Word)> = None;
    if n < 2 {
        return None;
    }
    for mask in 1u32..(1 << n) - 1 {
        let (w1, w2) = split_by_mask(w, mask);
        if w1 >= *bound {
            continue;
        }
        if best.as_ref().is_some_and(|b| (&w1, &w2) >= (&b.0, &b.1)) {
            continue;
        }
        if max_shuffle(&w1, &w2).0 == *w {
            best = Some((w1, w2));
        }
    }
    best
}

/// Membership of `(v, w)` in the generating set: `v` Lyndon, and `w` is not the
/// maximal shuffle of any `(w1, w2)` with `w1 <_dlex v`.
pub fn is_in_s(v: &Word, w: &Word) -> Result<bool> {
    if v.is_empty() || w.is_empty() {
        return Err(IdrError::EmptyWord);
    }
    if v > w {
        return Err(IdrError::OrderViolation(format!("{v} is dlex-greater than {w}")));
    }
    Ok(is_lyndon(v) && find_decomposition_below(w, v).is_none())
}

/// Key `(v, w)` of the constant `c(v, w)`, stored with `v ≤_dlex w` and ordered
/// by `(|v|+|w|, v, w)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenKey {
    v: Word,
    w: Word,
}

impl GenKey {
    /// Canonical key for the unordered pair `{a, b}`.
    pub fn new(a: Word, b: Word) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(IdrError::EmptyWord);
        }
        Ok(if a <= b { Self { v: a, w: b } } else { Self { v: b, w: a } })
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn w(&self) -> &Word {
        &self.w
    }

    pub fn weight(&self) -> usize {
        self.v.len() + self.w.len()
    }

    pub fn in_s(&self) -> bool {
        is_in_s(&self.v, &self.w).expect("keys are canonical")
    }
}

/// Order on generator keys: `(|v|+|w|, v, w)` lexicographically, words in dlex.
pub fn gen_cmp(a: &GenKey, b: &GenKey) -> Ordering {
    a.weight()
        .cmp(&b.weight())
        .then_with(|| a.v.cmp(&b.v))
        .then_with(|| a.w.cmp(&b.w))
}

impl Ord for GenKey {
    fn cmp(&self, other: &Self) -> Ordering {
        gen_cmp(self, other)
    }
}

impl PartialOrd for GenKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c({}|{})", self.v, self.w)
    }
}

impl fmt::Debug for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All words of exactly `len` letters over `0..alphabet_size`, in dlex order.
pub fn words_of_length(alphabet_size: u32, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| (0..alphabet_size).map(move |l| w.concat(&Word::single(Letter(l)))))
            .collect();
    }
    out
}

/// All nonempty words of length at most `max_len`, in dlex order.
pub fn words_up_to(alphabet_size: u32, max_len: usize) -> Vec<Word> {
    (1..=max_len).flat_map(|n| words_of_length(alphabet_size, n)).collect()
}

/// All keys `(v, w)` with `v ≤_dlex w` over the alphabet with `2 ≤ |v|+|w| ≤ wmax`,
/// in ascending generator order.
pub fn gen_keys_up_to(alphabet_size: u32, wmax: usize) -> Vec<GenKey> {
    let words = words_up_to(alphabet_size, wmax.saturating_sub(1));
    let mut out = Vec::new();
    for v in &words {
        for w in &words {
            if v <= w && v.len() + w.len() <= wmax {
                out.push(GenKey { v: v.clone(), w: w.clone() });
            }
        }
    }
    out.sort();
    out
}
