use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::algebra::Rat;

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub(crate) fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Exact square root of a rational, if it is rational.
pub(crate) fn rat_sqrt(q: &Rat) -> Option<Rat> {
    Some(Rat::new(int_sqrt(q.numer())?, int_sqrt(q.denom())?))
}

/// `√q = m·√n` with `n` an integer that is not a perfect square (or `n = 1`).
/// Small square factors are moved into `m`; `n` may be negative.
pub(crate) fn split_sqrt(q: &Rat) -> (Rat, BigInt) {
    if q.is_zero() {
        return (Rat::zero(), BigInt::one());
    }
    // √(p/d) = √(p·d)/d
    let d = q.denom().clone();
    let mut n = q.numer() * &d;
    let negative = n.sign() == Sign::Minus;
    n = n.abs();
    let mut m = BigInt::one();
    if let Some(s) = int_sqrt(&n) {
        m = s;
        n = BigInt::one();
    } else {
        let mut p = BigInt::from(2u32);
        let bound = BigInt::from(10_000u32);
        while p <= bound && &p * &p <= n {
            let sq = &p * &p;
            while (&n % &sq).is_zero() {
                n /= &sq;
                m *= &p;
            }
            p += 1u32;
        }
        if let Some(s) = int_sqrt(&n) {
            m *= s;
            n = BigInt::one();
        }
    }
    if negative {
        n = -n;
    }
    (Rat::new(m, d), n)
}

/// If `√a` and `√b` differ by a rational factor, returns `f` with `√b = f·√a`.
pub(crate) fn same_class(a: &BigInt, b: &BigInt) -> Option<Rat> {
    if a == b {
        return Some(Rat::one());
    }
    let prod = a * b;
    let s = int_sqrt(&prod)?;
    // √b = (√(ab)/|a|)·√a, with √n = i√|n| for negative n
    Some(Rat::new(s, a.abs()))
}
