use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{fmt_rat, int, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are indexed by degree and never carry trailing zeros, so the
/// zero polynomial is the empty vector and structural equality is equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// `x - a`
    pub fn linear(a: &Rat) -> Self {
        Self::from_coeffs(vec![-a.clone(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
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

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        // pseudo-division on integer forms; `scale` tracks the powers of the leading coefficient
        let (mut rem, da) = self.integer_form();
        let (b, db) = divisor.integer_form();
        let lc = &b[dd];
        let mut scale = BigInt::one();
        let mut quot = vec![Rat::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let t = std::mem::take(&mut rem[k + dd]);
            if t.is_zero() {
                continue;
            }
            quot[k] = Rat::new(&t * &db, &scale * lc * &da);
            if !lc.is_one() {
                for r in rem[..k + dd].iter_mut() {
                    *r *= lc;
                }
                scale *= lc;
            }
            for (i, d) in b[..dd].iter().enumerate() {
                rem[k + i] -= &t * d;
            }
        }
        rem.truncate(dd);
        let den = scale * da;
        let rem = rem.into_iter().map(|r| Rat::new(r, den.clone())).collect();
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        debug_assert!(r.is_zero(), "exact_div left a remainder");
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    /// Integer coefficients and a common denominator `d` with `self = (Σ cₖxᵏ)/d`.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        super::series::integer_form(&self.coeffs)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        if let Some(g) = super::modp::gcd(self, other) {
            return g;
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// `p(x + a)`, computed by Horner's scheme on polynomials.
    pub fn shift(&self, a: &Rat) -> Poly {
        let step = Poly::from_coeffs(vec![a.clone(), Rat::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &step) + &Poly::constant(c.clone()))
    }

    /// Multiplicity of the root `a` (0 when `a` is not a root).
    pub fn root_multiplicity(&self, a: &Rat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear(a);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.divrem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Writes the polynomial in the input grammar using `var` as the variable.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&fmt_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&fmt_rat(&mag));
                out.push('*');
                out.push_str(&power);
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        Poly::from_coeffs(super::series::product(&self.coeffs, &rhs.coeffs, n))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
