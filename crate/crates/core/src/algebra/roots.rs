//! Rational roots by p-adic Newton lifting.
//!
//! A rational root of a primitive integer polynomial `a_n x^n + ... + a_0`
//! becomes an integer root of the monic companion `y^n + a_{n-1} y^{n-1} +
//! a_n a_{n-2} y^{n-2} + ... + a_n^{n-1} a_0` under `y = a_n x`. Integer roots
//! of a monic squarefree polynomial are bounded by its Cauchy bound, so they
//! are recovered from simple roots modulo a good prime lifted past twice that
//! bound. No integer factorization is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Poly, Rat};

/// Distinct rational roots, sorted ascending.
pub fn rational_roots(p: &Poly) -> Vec<Rat> {
    let sf = p.squarefree_part();
    let Some(n) = sf.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let f = primitive_integer_coeffs(&sf);
    let lead = f[n].clone();
    // Monic companion g(y) = lead^(n-1) f(y / lead).
    let mut g = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one();
    for i in (0..n).rev() {
        g.push(&f[i] * &scale);
        scale *= &lead;
    }
    g.reverse();
    g.push(BigInt::one());
    let mut roots: Vec<Rat> = monic_integer_roots(&g)
        .into_iter()
        .map(|y| Rat::new(y, lead.clone()))
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

/// Distinct integer roots of an arbitrary rational polynomial, sorted.
pub fn integer_roots(p: &Poly) -> Vec<BigInt> {
    rational_roots(p)
        .into_iter()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer())
        .collect()
}

fn primitive_integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let den_lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

/// Integer roots of a monic squarefree integer polynomial (ascending coefficients).
fn monic_integer_roots(g: &[BigInt]) -> Vec<BigInt> {
    let n = g.len() - 1;
    if n == 1 {
        return vec![-g[0].clone()];
    }
    let bound = g.iter().map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let target = &bound * 2u32;
    let gd: Vec<BigInt> = (1..=n).map(|k| &g[k] * BigInt::from(k)).collect();

    let prime = small_primes()
        .find(|&p| squarefree_mod(g, p))
        .expect("a squarefree reduction exists for a squarefree polynomial");

    let mut roots = Vec::new();
    for r0 in roots_mod(g, prime) {
        let mut x = BigInt::from(r0);
        let mut modulus = BigInt::from(prime);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let fx = eval_int(g, &x).mod_floor(&modulus);
            let dfx = eval_int(&gd, &x).mod_floor(&modulus);
            let inv = dfx
                .modinv(&modulus)
                .expect("simple root keeps the derivative invertible");
            x = (&x - fx * inv).mod_floor(&modulus);
        }
        let half = &modulus / 2u32;
        if x > half {
            x -= &modulus;
        }
        if eval_int(g, &x).is_zero() {
            roots.push(x);
        }
    }
    roots
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = c
        .iter()
        .map(|a| a.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn roots_mod(g: &[BigInt], p: u64) -> Vec<u64> {
    let gm = reduce(g, p);
    (0..p)
        .filter(|&x| {
            gm.iter()
                .rev()
                .fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p as u128)
                == 0
        })
        .collect()
}

fn squarefree_mod(g: &[BigInt], p: u64) -> bool {
    let a = reduce(g, p);
    let d: Vec<BigInt> = (1..g.len()).map(|k| &g[k] * BigInt::from(k)).collect();
    let b = reduce(&d, p);
    if b.is_empty() {
        return false;
    }
    gcd_mod(a, b, p).len() == 1
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p) as u128;
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = (*a.last().unwrap() as u128 * inv) % p as u128;
            for (i, &bi) in b.iter().enumerate() {
                let sub = c * bi as u128 % p as u128;
                a[i + shift] = ((a[i + shift] as u128 + p as u128 - sub) % p as u128) as u64;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
