use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_rat, Poly, Rat};
use crate::error::{Error, Result};

/// Rational function `num / den` over the rationals in canonical form:
/// `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = den.leading_coeff().expect("nonzero").recip();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn eval(&self, at: &Rat) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole { at: fmt_rat(at) });
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn derivative(&self) -> RatFunc {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("nonzero denominator")
    }

    /// `k`-th derivative.
    pub fn nth_derivative(&self, k: usize) -> RatFunc {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Renders in the input grammar with `var` as the variable.
    pub fn display_with(&self, var: &str) -> String {
        let n = self.num.display_with(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.display_with(var);
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        let d = if self.den.term_count() > 1 { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::classify::parse_ratfunc(s)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn canonical_form_cancels_and_normalizes() {
        // (x^2 - 1) / (2x^3 - 2x) = 1 / (2x)
        let f = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, -2, 0, 2])).unwrap();
        assert_eq!(f.numer(), &Poly::constant(crate::algebra::rat(1, 2)));
        assert_eq!(f.denom(), &Poly::x());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(Poly::one(), Poly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn quotient_rule() {
        let f = RatFunc::new(Poly::one(), Poly::x()).unwrap();
        let df = RatFunc::new(Poly::constant(int(-1)), Poly::monomial(int(1), 2)).unwrap();
        assert_eq!(f.derivative(), df);
    }

    #[test]
    fn display_forms() {
        let f = RatFunc::new(Poly::constant(int(-4)), Poly::monomial(int(1), 2)).unwrap();
        assert_eq!(f.to_string(), "-4/x^2");
        let g = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(g.to_string(), "1/(x - 1)");
    }

    #[test]
    fn eval_at_pole_fails() {
        let f = RatFunc::new(Poly::one(), Poly::x()).unwrap();
        assert!(matches!(f.eval(&int(0)), Err(Error::Pole { .. })));
        assert_eq!(f.eval(&int(2)).unwrap(), crate::algebra::rat(1, 2));
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::testing::{ratfunc, small_rat};

    proptest! {
        #[test]
        fn product_then_quotient_is_identity(f in ratfunc(3, 4, 4), g in ratfunc(3, 4, 4)) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).checked_div(&g).unwrap(), f);
        }

        #[test]
        fn canonical_form_is_reduced(f in ratfunc(3, 4, 4)) {
            prop_assert!(f.denom().leading_coeff().is_some_and(|c| c.is_one()));
            prop_assert!(f.numer().gcd(f.denom()).is_one() || f.is_zero());
        }

        #[test]
        fn leibniz_rule(f in ratfunc(2, 4, 3), g in ratfunc(2, 4, 3)) {
            let lhs = (&f * &g).derivative();
            let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in ratfunc(2, 3, 3), g in ratfunc(2, 3, 3), x in small_rat(9, 4)) {
            if let (Ok(a), Ok(b)) = (f.eval(&x), g.eval(&x)) {
                prop_assert_eq!((&f * &g).eval(&x).unwrap(), &a * &b);
                prop_assert_eq!((&f + &g).eval(&x).unwrap(), a + b);
            }
        }
    }
}
