//! Machine checks on the relations among `c` constants.
//!
//! * Rank 1: the relations among `c_{n,m} = c(aⁿ, aᵐ)` for `n+m+l ≤ d` lie in
//!   the ideal of a set `G_d` whose leading terms are distinct variables.
//! * General alphabet, bounded weight: choosing one relation per leading
//!   generator, every other relation reduces to zero and the generators never
//!   chosen as leaders are exactly the pairs in `S`.
//!
//! Relation construction and reduction run in parallel; results are collected
//! in enumeration order so reports are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Rational};
use crate::constants::{leading_c2, occurs_only_linearly, relation_r, solve_for, C2Gen, C2Reducer, ConstPoly};
use crate::error::{IdrError, Result};
use crate::mpoly::{Mono, Poly};
use crate::words::{gen_keys_up_to, words_up_to, Word};

/// The rank-1 constant `c_{m,n}`. Indices are ordered (`c_{m,n}` and `c_{n,m}`
/// are distinct variables); variables compare by `m+n`, then by `m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct R1Var {
    pub m: u32,
    pub n: u32,
}

impl Ord for R1Var {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m + self.n, self.m).cmp(&(other.m + other.n, other.m))
    }
}

impl PartialOrd for R1Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for R1Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{},{}]", self.m, self.n)
    }
}

pub type Rank1Poly = Poly<R1Var>;

fn cv(m: u32, n: u32) -> Rank1Poly {
    Rank1Poly::var(R1Var { m, n })
}

fn binom(n: u32, k: u32) -> Rational {
    binomial(n as u64, k as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum VerifyParams {
    Rank1 { d: u32 },
    Freeness { alphabet_size: u32, wmax: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub parameters: VerifyParams,
    pub relations: usize,
    pub reduced_to_zero: usize,
    /// Relations with a nonzero remainder, with that remainder.
    pub failures: Vec<String>,
    /// Number of relations chosen as rewriting rules.
    pub rules: usize,
    pub irreducible_generators: Vec<String>,
    /// Whether the irreducible generators are the expected ones.
    pub generators_match: bool,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.generators_match && self.reduced_to_zero == self.relations
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.parameters {
            VerifyParams::Rank1 { d } => writeln!(f, "rank-1 ideal equality, d = {d}")?,
            VerifyParams::Freeness { alphabet_size, wmax } => {
                writeln!(f, "truncated freeness, {alphabet_size} letters, weight <= {wmax}")?
            }
        }
        writeln!(f, "relations:        {}", self.relations)?;
        writeln!(f, "reduced to zero:  {}", self.reduced_to_zero)?;
        writeln!(f, "rewriting rules:  {}", self.rules)?;
        writeln!(f, "irreducible:      {} ({})", self.irreducible_generators.len(), self.irreducible_generators.join(", "))?;
        writeln!(f, "generators match: {}", self.generators_match)?;
        for fail in &self.failures {
            writeln!(f, "residual: {fail}")?;
        }
        writeln!(f, "elapsed:          {:.3}s", self.elapsed_seconds)?;
        write!(f, "result:           {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// The relation attached to `f = aⁿ, g = aᵐ, h = aˡ`.
pub fn rank1_relation(n: u32, m: u32, l: u32) -> Rank1Poly {
    let mut r = cv(n + m, l).scale(&binom(n + m, m));
    r = r.sub(&cv(n, m + l).scale(&binom(m + l, m)));
    for j in 0..m {
        let lo = u32::from(j == 0);
        for i in lo..n {
            r = r.add(&cv(n - i, m - j).mul(&cv(i + j, l)).scale(&binom(i + j, j)));
        }
        for k in lo..l {
            r = r.sub(&cv(n, j + k).mul(&cv(m - j, l - k)).scale(&binom(j + k, j)));
        }
    }
    r
}

/// All rank-1 relations with `n, m, l ≥ 1` and `n+m+l ≤ d`, keyed by `(n, m, l)`
/// in lexicographic order.
pub fn rank1_relations(d: u32) -> Vec<((u32, u32, u32), Rank1Poly)> {
    let mut triples = Vec::new();
    for n in 1..d {
        for m in 1..d {
            for l in 1..d {
                if n + m + l <= d {
                    triples.push((n, m, l));
                }
            }
        }
    }
    triples.into_par_iter().map(|(n, m, l)| ((n, m, l), rank1_relation(n, m, l))).collect()
}

/// `m c_{m,n} − C(m+n−1, m−1) c_{1,m+n−1} − Σ_{j<m−1} Σ_{0<k<n} C(j+k, j) c_{1,j+k} c_{m−j−1,n−k}`.
pub fn rank1_solving_relation(m: u32, n: u32) -> Rank1Poly {
    let mut r = cv(m, n).scale(&Rational::from_integer(m.into()));
    r = r.sub(&cv(1, m + n - 1).scale(&binom(m + n - 1, m - 1)));
    for j in 0..=m - 2 {
        for k in 1..n {
            r = r.sub(&cv(1, j + k).mul(&cv(m - j - 1, n - k)).scale(&binom(j + k, j)));
        }
    }
    r
}

/// `G_d`: the solving relations for `2 ≤ m ≤ n ≤ d−m` and the symmetries
/// `c_{n,m} − c_{m,n}` for `1 ≤ m < n ≤ d−m`.
pub fn rank1_gd(d: u32) -> Vec<Rank1Poly> {
    let mut out = Vec::new();
    for m in 1..d {
        for n in m..=d.saturating_sub(m) {
            if m >= 2 {
                out.push(rank1_solving_relation(m, n));
            }
            if m < n {
                out.push(cv(n, m).sub(&cv(m, n)));
            }
        }
    }
    out
}

/// Division by a set whose leading terms are distinct variables occurring
/// linearly: each leader is replaced by its fully reduced solution.
pub struct LinearLeadReducer<V: Ord + Clone + std::hash::Hash> {
    rules: HashMap<V, Poly<V>>,
}

impl<V: Ord + Clone + std::hash::Hash> LinearLeadReducer<V> {
    /// Builds the reducer from polynomials whose greatest variable occurs only
    /// in a degree-one monomial. Fails on a repeated or nonlinear leader.
    pub fn new(basis: &[Poly<V>]) -> Result<Self>
    where
        V: fmt::Display,
    {
        let mut raw: BTreeMap<V, Poly<V>> = BTreeMap::new();
        for p in basis {
            let lead = p.max_var().ok_or_else(|| IdrError::Invalid("constant basis element".into()))?;
            let lm = Mono::var(lead.clone());
            let k = p.coeff(&lm);
            let linear = !k.is_zero() && p.terms().all(|(m, _)| *m == lm || m.exponent_of(&lead) == 0);
            if !linear {
                return Err(IdrError::Invalid(format!("leader {lead} does not occur linearly")));
            }
            let mut rest = p.clone();
            rest.add_term(lm, -k.clone());
            if raw.insert(lead.clone(), rest.scale(&(-k.recip()))).is_some() {
                return Err(IdrError::Invalid(format!("leader {lead} occurs twice")));
            }
        }
        let mut rules: HashMap<V, Poly<V>> = HashMap::new();
        for (v, rhs) in raw {
            let nf = rhs.eval_hom(|u| rules.get(u).cloned().unwrap_or_else(|| Poly::var(u.clone())));
            rules.insert(v, nf);
        }
        Ok(Self { rules })
    }

    pub fn is_leader(&self, v: &V) -> bool {
        self.rules.contains_key(v)
    }

    pub fn reduce(&self, p: &Poly<V>) -> Poly<V> {
        p.eval_hom(|u| self.rules.get(u).cloned().unwrap_or_else(|| Poly::var(u.clone())))
    }
}

/// Checks that every rank-1 relation of total degree at most `d` reduces to
/// zero modulo `G_d`, and that the surviving variables are the `c_{1,k}`.
pub fn check_ideal_equality(d: u32) -> VerifyReport {
    let start = Instant::now();
    let gd = rank1_gd(d);
    let reducer = LinearLeadReducer::new(&gd).expect("G_d has distinct linear leaders");
    let rels = rank1_relations(d);
    let residuals: Vec<Option<String>> = rels
        .par_iter()
        .map(|((n, m, l), r)| {
            let rem = reducer.reduce(r);
            (!rem.is_zero()).then(|| format!("({n},{m},{l}): {rem}"))
        })
        .collect();
    let failures: Vec<String> = residuals.into_iter().flatten().collect();
    let mut irreducible = Vec::new();
    let mut generators_match = true;
    for w in 2..=d {
        for m in 1..w {
            let v = R1Var { m, n: w - m };
            if !reducer.is_leader(&v) {
                irreducible.push(v.to_string());
                generators_match &= m == 1;
            }
        }
    }
    VerifyReport {
        parameters: VerifyParams::Rank1 { d },
        relations: rels.len(),
        reduced_to_zero: rels.len() - failures.len(),
        failures,
        rules: gd.len(),
        irreducible_generators: irreducible,
        generators_match,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// All triples `(V₁, V₂, V₃)` of nonempty words with `V₁ ≤ V₃` and total length
/// at most `wmax`, ordered lexicographically with words in dlex order.
pub fn relation_triples(alphabet_size: u32, wmax: usize) -> Vec<(Word, Word, Word)> {
    let words = words_up_to(alphabet_size, wmax.saturating_sub(2));
    let mut out = Vec::new();
    for v1 in &words {
        for v2 in &words {
            for v3 in &words {
                if v1 <= v3 && v1.len() + v2.len() + v3.len() <= wmax {
                    out.push((v1.clone(), v2.clone(), v3.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

/// The rewriting table chosen greedily in triple order: a relation becomes
/// the rule for its leading generator if no earlier relation claimed it and
/// the leader occurs only linearly.
pub fn greedy_rules(relations: &[ConstPoly]) -> HashMap<C2Gen, ConstPoly> {
    let mut table: HashMap<C2Gen, ConstPoly> = HashMap::new();
    for r in relations {
        let Some(lead) = leading_c2(r) else { continue };
        if table.contains_key(&lead) || !occurs_only_linearly(r, &lead) {
            continue;
        }
        let rhs = solve_for(r, &lead).expect("linear leader");
        table.insert(lead, rhs);
    }
    table
}

/// Bounded-weight freeness check over `alphabet_size` letters.
pub fn freeness_truncated(alphabet_size: u32, wmax: usize) -> VerifyReport {
    let start = Instant::now();
    let triples = relation_triples(alphabet_size, wmax);
    let relations: Vec<ConstPoly> = triples
        .par_iter()
        .map(|(a, b, c)| relation_r(a, b, c).expect("enumerated triples are valid"))
        .collect();
    let table = greedy_rules(&relations);
    let rules = table.len();
    let reducer = C2Reducer::from_table(table.clone());
    // warm the memo in generator order so parallel readers only hit the cache
    let keys = gen_keys_up_to(alphabet_size, wmax);
    for g in &keys {
        reducer.normal_form_of(g);
    }
    let residuals: Vec<Option<String>> = triples
        .par_iter()
        .zip(relations.par_iter())
        .map(|((a, b, c), r)| {
            let rem = reducer.normalize(r);
            (!rem.is_zero()).then(|| format!("r({a},{b},{c}): {rem}"))
        })
        .collect();
    let failures: Vec<String> = residuals.into_iter().flatten().collect();
    let irreducible: Vec<&C2Gen> = keys.iter().filter(|g| !table.contains_key(*g)).collect();
    let expected: Vec<&C2Gen> = keys.iter().filter(|g| g.in_s()).collect();
    VerifyReport {
        parameters: VerifyParams::Freeness { alphabet_size, wmax },
        relations: relations.len(),
        reduced_to_zero: relations.len() - failures.len(),
        failures,
        rules,
        generators_match: irreducible == expected,
        irreducible_generators: irreducible.iter().map(|g| g.to_string()).collect(),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Whether the leading generator of `r` has an integer coefficient.
pub fn leader_is_integral(r: &ConstPoly) -> bool {
    match leading_c2(r) {
        Some(g) => crate::constants::linear_coeff(r, &g).is_integer(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn rank1_examples() {
        let expected = cv(2, 2).scale(&q(2)).sub(&cv(1, 3).scale(&q(3))).sub(&cv(1, 1).pow(2));
        assert_eq!(rank1_relation(1, 1, 2), expected);
        assert_eq!(rank1_solving_relation(2, 2), expected);
        assert_eq!(rank1_relations(3).len(), 1);
        assert_eq!(rank1_relations(6).len(), 20);
        assert!(rank1_gd(5).contains(&cv(2, 1).sub(&cv(1, 2))));
    }

    #[test]
    fn small_checks_pass() {
        for d in [2, 3, 4, 7] {
            let r = check_ideal_equality(d);
            assert!(r.passed(), "{r}");
        }
        let r = freeness_truncated(1, 4);
        assert!(r.passed(), "{r}");
    }
}
