//! Factorization over the rationals.
//!
//! Squarefree parts come from Yun's algorithm. Each squarefree part is
//! factored modulo a small prime (distinct-degree then equal-degree splitting),
//! the modular factors are Hensel-lifted quadratically, and true factors are
//! recovered by Zassenhaus recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{poly_gcd, UniPoly};
use crate::error::{IdrError, Result};

/// Yun's algorithm: the monic squarefree parts `s_i` with `monic(p) = Π s_i^i`.
/// Parts equal to one are omitted.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let f = p.monic();
    if f.is_constant() {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Monic irreducible factors over ℚ with multiplicities, sorted by degree and
/// then coefficients. `lc(p) * Π f^m == p`.
pub fn irreducible_factor(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(IdrError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn factor_squarefree(s: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut s = s.clone();
    if s.degree() > Some(1) && s.coeff(0).is_zero() {
        out.push(UniPoly::x());
        s = s.exact_div(&UniPoly::x()).expect("x divides");
    }
    if s.degree() <= Some(1) {
        if !s.is_constant() {
            out.push(s.monic());
        }
        return out;
    }
    let (_, ints) = s.primitive_integer();
    for g in zassenhaus(&ints) {
        out.push(UniPoly::from_integers(&g).monic());
    }
    out
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], dense, lowest degree first, trimmed.

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_deg(a: &Fp) -> Option<usize> {
    a.len().checked_sub(1)
}

fn fp_pow_scalar(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_divrem(a: &Fp, d: &Fp, p: u64) -> (Fp, Fp) {
    let dd = fp_deg(d).expect("division by zero in F_p[x]");
    let inv = fp_inv(d[dd], p);
    let mut r = a.clone();
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dd];
    for k in (dd..r.len()).rev() {
        let c = r[k] * inv % p;
        if c == 0 {
            continue;
        }
        q[k - dd] = c;
        for (j, dj) in d.iter().enumerate() {
            let idx = k - dd + j;
            r[idx] = (r[idx] + p - c * dj % p) % p;
        }
    }
    (trim(q), trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_empty() {
        let r = fp_divrem(&r0, &r1, p).1;
        r0 = std::mem::replace(&mut r1, r);
    }
    fp_monic(&r0, p)
}

/// `(s, t)` with `s a + t b = 1`, `deg s < deg b`, `deg t < deg a`.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "inputs are not coprime modulo p");
    let inv = fp_inv(r0[0], p);
    let s = s0.iter().map(|c| c * inv % p).collect();
    let t = t0.iter().map(|c| c * inv % p).collect();
    (trim(s), trim(t))
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let base = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i as u64 % p) * c % p)
        .collect();
    trim(out)
}

fn reduce_mod_p(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
    )
}

/// Irreducible monic factors of a monic squarefree `g` over F_p (p odd).
fn fp_factor(g: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while fp_deg(&rest).unwrap_or(0) >= 2 * d {
        h = fp_powmod(&h, &pe, &rest, p);
        let gi = fp_gcd(&rest, &fp_sub(&h, &x, p), p);
        if fp_deg(&gi).unwrap_or(0) > 0 {
            equal_degree_split(&gi, d, p, rng, &mut out);
            rest = fp_divrem(&rest, &gi, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if fp_deg(&rest).unwrap_or(0) > 0 {
        out.push(fp_monic(&rest, p));
    }
    out
}

fn equal_degree_split(g: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = fp_deg(g).expect("nonzero");
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if fp_deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &vec![1], p);
        let c = fp_gcd(g, &b, p);
        let dc = fp_deg(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            let other = fp_divrem(g, &c, p).0;
            equal_degree_split(&c, d, p, rng, out);
            equal_degree_split(&other, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic in (Z/m)[x], coefficients kept in [0, m).

type Zm = Vec<BigInt>;

fn zm_trim(mut a: Zm) -> Zm {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zm_reduce(a: &[BigInt], m: &BigInt) -> Zm {
    zm_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn zm_sub(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn zm_mul(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

/// Division by a monic divisor, valid over any coefficient ring.
fn zm_divrem_monic(a: &Zm, h: &Zm, m: &BigInt) -> (Zm, Zm) {
    let dh = h.len() - 1;
    let mut r = a.clone();
    if r.len() <= dh {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (dh..r.len()).rev() {
        let c = r[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, hj) in h.iter().enumerate() {
            let idx = k - dh + j;
            r[idx] = (&r[idx] - &c * hj).mod_floor(m);
        }
        q[k - dh] = c;
    }
    (zm_trim(q), zm_reduce(&r, m))
}

fn lift_u64(a: &Fp) -> Zm {
    a.iter().map(|c| BigInt::from(*c)).collect()
}

fn int_mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ g h (mod p)` to a factorization modulo `p^(2^steps)`.
fn hensel_pair(f: &Zm, g: &Fp, h: &Fp, p: u64, steps: u32) -> (Zm, Zm) {
    let (s0, t0) = fp_bezout(g, h, p);
    let (mut g, mut h) = (lift_u64(g), lift_u64(h));
    let (mut s, mut t) = (lift_u64(&s0), lift_u64(&t0));
    let mut m = BigInt::from(p);
    let one: Zm = vec![BigInt::one()];
    for _ in 0..steps {
        let m2 = &m * &m;
        let e = zm_sub(&zm_reduce(f, &m2), &zm_mul(&g, &h, &m2), &m2);
        let (qt, r) = zm_divrem_monic(&zm_mul(&s, &e, &m2), &h, &m2);
        let g2 = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m2), &m2), &zm_mul(&qt, &g, &m2), &m2);
        let h2 = zm_add(&h, &r, &m2);
        let b = zm_sub(
            &zm_add(&zm_mul(&s, &g2, &m2), &zm_mul(&t, &h2, &m2), &m2),
            &one,
            &m2,
        );
        let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &m2), &h2, &m2);
        s = zm_sub(&s, &d, &m2);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g2, &m2), &m2);
        g = g2;
        h = h2;
        m = m2;
    }
    (g, h)
}

/// Lifts the monic modular factors of the monic-mod-`m` polynomial `f`.
fn hensel_multi(f: &Zm, factors: &[Fp], p: u64, steps: u32, m: &BigInt) -> Vec<Zm> {
    if factors.len() == 1 {
        return vec![zm_reduce(f, m)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
    let (g0, h0) = (prod(&factors[..mid]), prod(&factors[mid..]));
    let (g, h) = hensel_pair(f, &g0, &h0, p, steps);
    let mut out = hensel_multi(&g, &factors[..mid], p, steps, m);
    out.extend(hensel_multi(&h, &factors[mid..], p, steps, m));
    out
}

fn symmetric(a: &Zm, m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &a {
        g = g.gcd(c);
    }
    let lead_neg = a.iter().rev().find(|c| !c.is_zero()).is_some_and(Signed::is_negative);
    if lead_neg {
        g = -g;
    }
    zm_trim(a.into_iter().map(|c| c / &g).collect())
}

/// Irreducible factors of a squarefree primitive integer polynomial of degree ≥ 2.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1d7);

    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in (3u64..).filter(|&c| is_small_prime(c)).take(400) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp_deg(&fp) != Some(n) {
            continue;
        }
        if fp_deg(&fp_gcd(&fp, &fp_derivative(&fp, p), p)) != Some(0) {
            continue;
        }
        let facs = fp_factor(&fp_monic(&fp, p), p, &mut rng);
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps the polynomial squarefree");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm_sq.sqrt() + 1) * lc.abs();
    let target = bound * 2;
    let mut steps = 0u32;
    let mut m = BigInt::from(p);
    while m <= target {
        m = &m * &m;
        steps += 1;
    }
    let monic_f = {
        let inv = int_mod_inverse(&lc, &m);
        zm_reduce(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)
    };
    let mut lifted = hensel_multi(&monic_f, &modular, p, steps, &m);

    let mut found = Vec::new();
    let mut cur = UniPoly::from_integers(f);
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let lc_cur = cur.primitive_integer().1.last().cloned().expect("nonzero");
        let mut hit = None;
        for combo in combinations(lifted.len(), size) {
            let mut g: Zm = vec![lc_cur.clone()];
            for &i in &combo {
                g = zm_mul(&g, &lifted[i], &m);
            }
            let cand = primitive(symmetric(&g, &m));
            if cand.len() < 2 {
                continue;
            }
            if let Some(quot) = cur.exact_div(&UniPoly::from_integers(&cand)) {
                hit = Some((combo, cand, quot));
                break;
            }
        }
        match hit {
            Some((combo, cand, quot)) => {
                found.push(cand);
                cur = quot;
                for i in combo.into_iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !cur.is_constant() {
        found.push(cur.primitive_integer().1);
    }
    found
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn reconstruct(p: &UniPoly, fs: &[(UniPoly, u32)]) -> UniPoly {
        let mut acc = UniPoly::constant(p.lc());
        for (f, m) in fs {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    #[test]
    fn worked_examples() {
        let fs = irreducible_factor(&UniPoly::from_i64s(&[-1, 0, 1])).unwrap();
        assert_eq!(
            fs,
            vec![(UniPoly::from_i64s(&[-1, 1]), 1), (UniPoly::from_i64s(&[1, 1]), 1)]
        );
        let fs = irreducible_factor(&UniPoly::from_i64s(&[1, 0, 1])).unwrap();
        assert_eq!(fs, vec![(UniPoly::from_i64s(&[1, 0, 1]), 1)]);
        let fs = irreducible_factor(&UniPoly::monomial(3, q(1))).unwrap();
        assert_eq!(fs, vec![(UniPoly::x(), 3)]);
        assert_eq!(irreducible_factor(&UniPoly::zero()), Err(IdrError::ZeroPolynomial));
    }

    #[test]
    fn swinnerton_dyer_like_splitting() {
        // x^4 + 1 is irreducible over Q yet splits modulo every prime.
        let p = UniPoly::from_i64s(&[1, 0, 0, 0, 1]);
        assert_eq!(irreducible_factor(&p).unwrap(), vec![(p.clone(), 1)]);
        // x^4 - 10x^2 + 1 likewise.
        let p = UniPoly::from_i64s(&[1, 0, -10, 0, 1]);
        assert_eq!(irreducible_factor(&p).unwrap().len(), 1);
    }

    #[test]
    fn products_of_known_factors() {
        let a = UniPoly::from_i64s(&[1, 0, 1]);
        let b = UniPoly::from_i64s(&[-2, 0, 0, 1]);
        let c = UniPoly::from_i64s(&[3, 2]);
        let d = UniPoly::from_i64s(&[1, 1, 1, 1, 1]);
        let p = (&(&a.pow(2) * &b) * &c.pow(3)) * d.clone();
        let p = p.scale(&q(-6));
        let fs = irreducible_factor(&p).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(reconstruct(&p, &fs), p);
    }

    #[test]
    fn nonmonic_linear_factors() {
        // (2x-1)(3x+1)(5x-7)(x+4)
        let fs = [[-1, 2], [1, 3], [-7, 5], [4, 1]];
        let p = fs
            .iter()
            .fold(UniPoly::one(), |acc, f| &acc * &UniPoly::from_i64s(f));
        let got = irreducible_factor(&p).unwrap();
        assert_eq!(got.len(), 4);
        assert_eq!(reconstruct(&p, &got), p);
    }

    #[test]
    fn yun_multiplicities() {
        let a = UniPoly::from_i64s(&[1, 1]);
        let b = UniPoly::from_i64s(&[1, 0, 1]);
        let p = &a.pow(3) * &b.pow(2);
        let sq = squarefree_decomposition(&p);
        assert_eq!(sq, vec![(b, 2), (a, 3)]);
    }

    #[test]
    fn combinations_enumerate() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
