//! Truncated power series with exact rational coefficients. A series is a
//! plain coefficient slice; every routine returns exactly `n` coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{int, Rat};

/// Integer coefficients and a common denominator `d` with `s = c/d`.
pub(crate) fn integer_form(s: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let d = s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = s.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (ints, d)
}

/// Product of `a` and `b` keeping the coefficients of degree below `n`, computed
/// over the integers after clearing denominators.
pub(crate) fn product(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let (x, dx) = integer_form(&a[..a.len().min(n)]);
    let (y, dy) = integer_form(&b[..b.len().min(n)]);
    let mut out = vec![BigInt::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(n - i) {
            out[i + j] += xi * yj;
        }
    }
    let d = dx * dy;
    out.into_iter().map(|c| Rat::new(c, d.clone())).collect()
}

fn at(s: &[Rat], k: usize) -> Rat {
    s.get(k).cloned().unwrap_or_else(Rat::zero)
}

pub fn add(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    (0..n).map(|k| at(a, k) + at(b, k)).collect()
}

/// Cauchy product truncated to `n` terms.
pub fn mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    product(a, b, n)
}

/// `a / b`; requires `b[0] != 0`.
pub fn div(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let b0_inv = at(b, 0).recip();
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = at(a, k);
        for (j, oj) in out.iter().enumerate() {
            let bk = at(b, k - j);
            if !bk.is_zero() {
                c -= oj * bk;
            }
        }
        out.push(c * &b0_inv);
    }
    out
}

/// Formal derivative; the result has `n` terms.
pub fn derivative(a: &[Rat], n: usize) -> Vec<Rat> {
    (0..n).map(|k| at(a, k + 1) * int(k as i64 + 1)).collect()
}

/// Square root of a series with constant term 1.
pub fn sqrt_unit(a: &[Rat], n: usize) -> Vec<Rat> {
    debug_assert!(at(a, 0).is_one());
    let two = int(2);
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            out.push(Rat::one());
            continue;
        }
        // 2 h_k = a_k - sum_{i=1}^{k-1} h_i h_{k-i}
        let mut c = at(a, k);
        for i in 1..k {
            c -= &out[i] * &out[k - i];
        }
        out.push(c / &two);
    }
    out
}
