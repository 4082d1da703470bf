//! Sparse multivariate polynomials over the rationals in [`JetSymbol`]s.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::JetSymbol;
use crate::algebra::{fmt_rat, int, Rat};

/// Power product, sorted by symbol, exponents strictly positive.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<(JetSymbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: JetSymbol, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: JetSymbol) -> u32 {
        self.0.iter().find(|(t, _)| *t == s).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(JetSymbol, u32)] {
        &self.0
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> i64) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let (s, a, b) = match (self.0.get(i), other.0.get(j)) {
                (Some(&(s, a)), Some(&(t, b))) => match s.cmp(&t) {
                    Ordering::Less => {
                        i += 1;
                        (s, a, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (t, 0, b)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (s, a, b)
                    }
                },
                (Some(&(s, a)), None) => {
                    i += 1;
                    (s, a, 0)
                }
                (None, Some(&(t, b))) => {
                    j += 1;
                    (t, 0, b)
                }
                (None, None) => unreachable!(),
            };
            let e = f(a, b);
            if e < 0 {
                return None;
            }
            if e > 0 {
                out.push((s, e as u32));
            }
        }
        Some(Monomial(out))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a as i64 + b as i64).expect("nonnegative")
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.merge(other, |a, b| a as i64 - b as i64)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.min(b) as i64).expect("nonnegative")
    }

    fn without(&self, s: JetSymbol) -> Monomial {
        Monomial(self.0.iter().filter(|(t, _)| *t != s).cloned().collect())
    }
}

/// Lexicographic order with `Frame(0)` the most significant symbol.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(s, a)), Some(&(t, b))) => match s.cmp(&t) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if a != b {
                            return a.cmp(&b);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn symbol(s: JetSymbol) -> Self {
        Self::term(Monomial::var(s, 1), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rat)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn symbols(&self) -> BTreeSet<JetSymbol> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| *s)).collect()
    }

    pub fn degree_in(&self, s: JetSymbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Coefficients of `self` viewed as a polynomial in `s`, ascending.
    pub fn coeffs_in(&self, s: JetSymbol) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(s) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(s) as usize].add_term(m.without(s), c.clone());
        }
        out
    }

    pub fn partial(&self, s: JetSymbol) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e == 0 {
                continue;
            }
            let lowered = m.div(&Monomial::var(s, 1)).expect("divides");
            out.add_term(lowered, c * int(e as i64));
        }
        out
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MPoly) -> Option<MPoly> {
        let (lm, lc) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(lm)?;
            let c = rc * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&m).scale(&c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Makes the lexicographically leading coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |g, m| g.gcd(m))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::one();
        }
        if self.len() == 1 || other.len() == 1 {
            let g = self.monomial_content().gcd(&other.monomial_content());
            return MPoly::term(g, Rat::one());
        }
        let vars: BTreeSet<JetSymbol> = self.symbols().union(&other.symbols()).cloned().collect();
        let v = *vars.iter().next().expect("nonconstant");
        let (in_a, in_b) = (self.degree_in(v) > 0, other.degree_in(v) > 0);
        if !in_a {
            return self.gcd(&other.content_in(v));
        }
        if !in_b {
            return other.gcd(&self.content_in(v));
        }
        let (ca, cb) = (self.content_in(v), other.content_in(v));
        let content = ca.gcd(&cb);
        let mut a = self.exact_div(&ca).expect("content divides");
        let mut b = other.exact_div(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                b = MPoly::one();
                break;
            }
            a = b;
            b = r.primitive_in(v);
        }
        (&content * &b.primitive_in(v)).monic()
    }

    fn content_in(&self, v: JetSymbol) -> MPoly {
        self.coeffs_in(v)
            .into_iter()
            .filter(|c| !c.is_zero())
            .fold(MPoly::zero(), |g, c| {
                if g.is_constant() && !g.is_zero() {
                    g
                } else {
                    g.gcd(&c)
                }
            })
    }

    fn primitive_in(&self, v: JetSymbol) -> MPoly {
        self.exact_div(&self.content_in(v)).expect("content divides")
    }

    fn pseudo_rem(&self, b: &MPoly, v: JetSymbol) -> MPoly {
        let db = b.degree_in(v);
        let lb = b.coeffs_in(v).pop().expect("nonzero");
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coeffs_in(v).pop().expect("nonzero");
            let shifted = (&lr * b).mul_monomial(&Monomial::var(v, dr - db));
            r = &(&lb * &r) - &shifted;
        }
        r
    }

    pub fn eval(&self, value: &dyn Fn(JetSymbol) -> Option<Rat>) -> Result<Rat, JetSymbol> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(s, e) in &m.0 {
                let x = value(s).ok_or(s)?;
                t *= num_traits::pow(x, e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rat(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use JetSymbol::{Frame, Letter};

    fn s(sym: JetSymbol) -> MPoly {
        MPoly::symbol(sym)
    }

    #[test]
    fn lex_order_prefers_lambda() {
        let a = Monomial::var(Frame(0), 1);
        let b = Monomial::var(Frame(1), 5);
        assert!(a > b);
        assert!(Monomial::var(Frame(1), 2) > Monomial::var(Frame(1), 1));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let x = s(Frame(1));
        let y = s(Letter('a', 0));
        let one = MPoly::one();
        let common = &(&x * &y) + &one; // x y + 1
        let p = &common * &(&x + &y);
        let q = &common * &(&x - &one);
        assert_eq!(p.gcd(&q), common.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let x = s(Frame(1));
        let y = s(Frame(2));
        let p = &(&x * &x) + &y;
        let q = &x + &y;
        assert_eq!(p.gcd(&q), MPoly::one());
    }

    #[test]
    fn exact_division() {
        let x = s(Frame(1));
        let y = s(Letter('R', 0));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.exact_div(&(&x + &y)), Some(&x - &y));
        assert_eq!(p.exact_div(&(&x + &MPoly::one())), None);
    }
}
