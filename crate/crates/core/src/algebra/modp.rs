//! Arithmetic modulo word-sized primes, used for fast certificates of
//! coprimality and rank over the rationals.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Poly, Rat};

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if let Some(&b) = BASES.iter().find(|&&b| n.is_multiple_of(b)) {
        return n == b;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        (1..s).any(|_| {
            x = mul(x, x, n);
            x == n - 1
        })
    })
}

/// The `i`-th prime below `2^63`, counting down; found once and cached.
fn nth_prime(i: usize) -> u64 {
    static CACHE: Mutex<Vec<u64>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= i {
        let mut n = cache.last().map_or(1u64 << 63, |&p| p) - 1;
        while !is_prime(n) {
            n -= 1 + (n & 1);
        }
        cache.push(n);
    }
    cache[i]
}

/// Primes below `2^63`, descending.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (0..).map(nth_prime)
}

const MAX_GCD_PRIMES: usize = 256;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// `q mod p`, or `None` when `p` divides the denominator.
pub(crate) fn reduce(q: &Rat, p: u64) -> Option<u64> {
    let d = reduce_int(q.denom(), p);
    (d != 0).then(|| mul(reduce_int(q.numer(), p), inv(d, p), p))
}

/// Coefficients mod `p`, trimmed; `None` when some denominator vanishes mod `p`.
fn poly_mod(f: &Poly, p: u64) -> Option<Vec<u64>> {
    let mut v = f.coeffs().iter().map(|c| reduce(c, p)).collect::<Option<Vec<u64>>>()?;
    while v.last() == Some(&0) {
        v.pop();
    }
    Some(v)
}

fn rem(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let lc = inv(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mul(a[top], lc, p);
        for (i, &bi) in b.iter().enumerate() {
            let k = top - db + i;
            a[k] = sub(a[k], mul(c, bi, p), p);
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

fn monic_gcd_mod(a: &Poly, b: &Poly, p: u64) -> Option<Vec<u64>> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return None;
    };
    let (mut x, mut y) = (poly_mod(a, p)?, poly_mod(b, p)?);
    if x.len() != da + 1 || y.len() != db + 1 {
        return None;
    }
    while !y.is_empty() {
        rem(&mut x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    let s = inv(*x.last().expect("nonzero gcd"), p);
    Some(x.into_iter().map(|c| mul(c, s, p)).collect())
}

/// `n/d ≡ a (mod m)` with `|n|, d` below `sqrt(m/2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    (!t1.is_zero() && t1.abs() <= bound).then(|| Rat::new(r1, t1))
}

/// Monic gcd over the rationals by reduction modulo several primes, checked by
/// exact division; `None` when the primes run out first.
pub(crate) fn gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    // residues of the monic gcd modulo the product of the primes used so far
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Poly> = None;
    for p in primes().take(MAX_GCD_PRIMES) {
        let Some(g) = monic_gcd_mod(a, b, p) else {
            continue;
        };
        if g.len() == 1 {
            return Some(Poly::one());
        }
        if !residues.is_empty() && g.len() > residues.len() {
            continue;
        }
        if g.len() < residues.len() {
            residues.clear();
            previous = None;
        }
        if residues.is_empty() {
            residues = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
        } else {
            let m_inv = inv(reduce_int(&modulus, p), p);
            for (x, &c) in residues.iter_mut().zip(&g) {
                let t = mul(sub(c, reduce_int(x, p), p), m_inv, p);
                *x += &modulus * BigInt::from(t);
            }
            modulus *= BigInt::from(p);
        }
        let Some(coeffs) = residues
            .iter()
            .map(|x| reconstruct(x, &modulus))
            .collect::<Option<Vec<Rat>>>()
        else {
            previous = None;
            continue;
        };
        let candidate = Poly::from_coeffs(coeffs);
        if previous.as_ref() == Some(&candidate) {
            let divides = |f: &Poly| f.divrem(&candidate).is_ok_and(|(_, r)| r.is_zero());
            if divides(a) && divides(b) {
                return Some(candidate);
            }
        }
        previous = Some(candidate);
    }
    None
}

/// Indices of a maximal set of rows independent modulo some prime; those rows
/// are independent over the rationals as well.
pub(crate) fn independent_rows(rows: &[Vec<Rat>], ncols: usize) -> Option<Vec<usize>> {
    primes().take(3).find_map(|p| {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|c| reduce(c, p)).collect::<Option<Vec<u64>>>())
            .collect::<Option<_>>()?;
        // echelon basis kept as (pivot column, normalized row)
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        for (i, row) in reduced.into_iter().enumerate() {
            let mut v = row;
            for (c, b) in &basis {
                let f = v[*c];
                if f != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = sub(*x, mul(f, *y, p), p);
                    }
                }
            }
            if let Some(c) = v.iter().position(|&x| x != 0) {
                let s = inv(v[c], p);
                for x in v.iter_mut() {
                    *x = mul(*x, s, p);
                }
                basis.push((c, v));
                chosen.push(i);
                if chosen.len() == ncols {
                    break;
                }
            }
        }
        Some(chosen)
    })
}
