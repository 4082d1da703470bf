use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Monomial};
use super::JetSymbol;
use crate::algebra::{Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// Rational expression in jet symbols, kept as a reduced fraction of
/// multivariate polynomials whose denominator has leading coefficient 1.
/// Two expressions are equal exactly when their canonical forms coincide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JetExpr {
    num: MPoly,
    den: MPoly,
}

impl JetExpr {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return JetExpr {
                num: num.scale(&c.recip()),
                den: MPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading().expect("nonzero").1.recip();
        JetExpr {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        JetExpr {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::algebra::int(n))
    }

    pub fn symbol(s: JetSymbol) -> Self {
        Self::from_poly(MPoly::symbol(s))
    }

    pub fn frame(j: u8) -> Self {
        Self::symbol(JetSymbol::Frame(j))
    }

    pub fn letter(c: char, i: u8) -> Self {
        Self::symbol(JetSymbol::Letter(c, i))
    }

    pub fn anchored(c: char, i: u8) -> Self {
        Self::symbol(JetSymbol::Anchored(c, i))
    }

    pub fn from_poly(p: MPoly) -> Self {
        JetExpr {
            num: p,
            den: MPoly::one(),
        }
    }

    /// Embeds a univariate rational function as a function of `λ`.
    pub fn from_ratfunc(f: &RatFunc) -> Self {
        let lift = |p: &Poly| -> MPoly {
            p.coeffs().iter().enumerate().fold(MPoly::zero(), |acc, (k, c)| {
                &acc + &MPoly::term(Monomial::var(JetSymbol::LAMBDA, k as u32), c.clone())
            })
        };
        Self::canonical(lift(f.numer()), lift(f.denom()))
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.as_constant().is_some() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<JetSymbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn recip(&self) -> Result<JetExpr> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &JetExpr) -> Result<JetExpr> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i32) -> JetExpr {
        let k = e.unsigned_abs();
        let (n, d) = if e >= 0 {
            (self.num.pow(k), self.den.pow(k))
        } else {
            (self.den.pow(k), self.num.pow(k))
        };
        Self::new(n, d).expect("power of a nonzero expression")
    }

    pub fn scale(&self, c: &Rat) -> JetExpr {
        if c.is_zero() {
            return Self::zero();
        }
        JetExpr {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Partial derivative with respect to one symbol, all others held fixed.
    pub fn partial(&self, s: JetSymbol) -> JetExpr {
        let dn = self.num.partial(s);
        let dd = self.den.partial(s);
        if dd.is_zero() {
            return Self::canonical(dn, self.den.clone());
        }
        let n = &(&dn * &self.den) - &(&self.num * &dd);
        Self::canonical(n, &self.den * &self.den)
    }

    /// Applies the derivation sending each symbol `s` to `image(s)`.
    pub fn derive_with(&self, image: impl Fn(JetSymbol) -> JetExpr) -> JetExpr {
        self.symbols().into_iter().fold(JetExpr::zero(), |acc, s| {
            let v = image(s);
            if v.is_zero() {
                acc
            } else {
                &acc + &(&v * &self.partial(s))
            }
        })
    }

    /// Total derivative along the frame parameter `ε`: `λ^(j) ↦ λ^(j+1)` and
    /// `f^(i)(λ) ↦ f^(i+1)(λ)·λ_ε`. Anchored values are constants.
    pub fn total_derivative(&self) -> JetExpr {
        let le = JetExpr::frame(1);
        self.derive_with(|s| match s {
            JetSymbol::Frame(j) => JetExpr::frame(j + 1),
            JetSymbol::Letter(c, i) => &JetExpr::letter(c, i + 1) * &le,
            JetSymbol::Anchored(..) => JetExpr::zero(),
        })
    }

    /// `∂/∂λ` where letters are functions of `λ` (chain rule through letters).
    pub fn lambda_derivative(&self) -> JetExpr {
        self.derive_with(|s| match s {
            JetSymbol::Frame(0) => JetExpr::one(),
            JetSymbol::Letter(c, i) => JetExpr::letter(c, i + 1),
            _ => JetExpr::zero(),
        })
    }

    /// Replaces symbols by expressions; `None` keeps the symbol.
    pub fn substitute(&self, image: &dyn Fn(JetSymbol) -> Option<JetExpr>) -> Result<JetExpr> {
        let subst_poly = |p: &MPoly| -> JetExpr {
            p.terms().fold(JetExpr::zero(), |acc, (m, c)| {
                let t = m.factors().iter().fold(JetExpr::constant(c.clone()), |t, &(s, e)| {
                    let base = image(s).unwrap_or_else(|| JetExpr::symbol(s));
                    &t * &base.pow(e as i32)
                });
                &acc + &t
            })
        };
        subst_poly(&self.num).checked_div(&subst_poly(&self.den))
    }

    /// Replaces the letter `name` and its derivatives by `f` and its derivatives in `λ`.
    pub fn substitute_letter(&self, name: char, f: &RatFunc) -> Result<JetExpr> {
        self.substitute(&|s| match s {
            JetSymbol::Letter(c, i) if c == name => Some(JetExpr::from_ratfunc(&f.nth_derivative(i as usize))),
            _ => None,
        })
    }

    pub fn eval(&self, value: &dyn Fn(JetSymbol) -> Option<Rat>) -> Result<Rat> {
        let unbound = |s: JetSymbol| Error::Unbound(s.to_string());
        let n = self.num.eval(value).map_err(unbound)?;
        let d = self.den.eval(value).map_err(unbound)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(n / d)
    }
}

impl Default for JetExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rat> for JetExpr {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for JetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for JetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetExpr({self})")
    }
}

impl Add for &JetExpr {
    type Output = JetExpr;
    fn add(self, rhs: &JetExpr) -> JetExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return JetExpr::canonical(&self.num + &rhs.num, self.den.clone());
        }
        JetExpr::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &JetExpr {
    type Output = JetExpr;
    fn sub(self, rhs: &JetExpr) -> JetExpr {
        self + &(-rhs)
    }
}

impl Neg for &JetExpr {
    type Output = JetExpr;
    fn neg(self) -> JetExpr {
        JetExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &JetExpr {
    type Output = JetExpr;
    fn mul(self, rhs: &JetExpr) -> JetExpr {
        if self.is_zero() || rhs.is_zero() {
            return JetExpr::zero();
        }
        JetExpr::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div for &JetExpr {
    type Output = JetExpr;
    fn div(self, rhs: &JetExpr) -> JetExpr {
        self.checked_div(rhs).expect("division by zero JetExpr")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for JetExpr {
            type Output = JetExpr;
            fn $m(self, rhs: JetExpr) -> JetExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for JetExpr {
    type Output = JetExpr;
    fn neg(self) -> JetExpr {
        -&self
    }
}

/// Shorthand for `λ^(j)`.
pub fn lam(j: u8) -> JetExpr {
    JetExpr::frame(j)
}
