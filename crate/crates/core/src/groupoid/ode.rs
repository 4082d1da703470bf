use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, rational_poles, Rat, RatFunc};
use crate::error::{Error, Result};

/// Monic linear differential operator `a^(n) + c_{n-1} a^(n-1) + ... + c_0 a`
/// with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct LinearODE {
    /// `coefficients[i]` multiplies the `i`-th derivative; the last entry is 1.
    coefficients: Vec<RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    order: usize,
    coefficients: Vec<RatFunc>,
}

impl TryFrom<OperatorRepr> for LinearODE {
    type Error = Error;
    fn try_from(r: OperatorRepr) -> Result<Self> {
        let op = LinearODE::new(r.coefficients)?;
        if op.order() != r.order {
            return Err(Error::OrderMismatch {
                left: r.order,
                right: op.order(),
            });
        }
        Ok(op)
    }
}

impl From<LinearODE> for OperatorRepr {
    fn from(op: LinearODE) -> Self {
        OperatorRepr {
            order: op.order(),
            coefficients: op.coefficients,
        }
    }
}

impl LinearODE {
    pub fn new(coefficients: Vec<RatFunc>) -> Result<Self> {
        match coefficients.last() {
            Some(lead) if lead.as_constant().is_some_and(|c| c.is_one()) && coefficients.len() > 1 => {
                Ok(LinearODE { coefficients })
            }
            _ => Err(Error::NotMonic),
        }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[RatFunc] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> &RatFunc {
        &self.coefficients[i]
    }

    /// `L(f)`
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut deriv = f.clone();
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                deriv = deriv.derivative();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &deriv);
            }
        }
        acc
    }

    /// `self ∘ inner`, i.e. the operator `y ↦ self(inner(y))`.
    pub fn compose(&self, inner: &LinearODE) -> LinearODE {
        let m = inner.order();
        let mut out = vec![RatFunc::zero(); self.order() + m + 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in inner.coefficients.iter().enumerate() {
                // ∂^i (b y^(j)) = Σ_k C(i,k) b^(i-k) y^(j+k)
                let mut binom = Rat::one();
                for k in 0..=i {
                    if k > 0 {
                        binom = binom * int((i - k + 1) as i64) / int(k as i64);
                    }
                    let db = b.nth_derivative(i - k);
                    if db.is_zero() {
                        continue;
                    }
                    out[j + k] = &out[j + k] + &(a * &db).scale(&binom);
                }
            }
        }
        LinearODE { coefficients: out }
    }

    /// Sorted poles of all coefficients (the finite singular points).
    pub fn singular_points(&self) -> Result<Vec<Rat>> {
        let mut pts = BTreeSet::new();
        for c in &self.coefficients {
            for p in rational_poles(c, -1)? {
                pts.insert(p.location);
            }
        }
        Ok(pts.into_iter().collect())
    }

    /// Renders as `a''' + 2*R*a' + ...` with `var` for the independent variable.
    pub fn display_with(&self, unknown: &str, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let d = format!("{unknown}{}", "'".repeat(i));
            let (neg, body) = match c.as_constant() {
                Some(k) if k.abs().is_one() => (k.is_negative(), d),
                Some(k) => (k.is_negative(), format!("{}*{d}", crate::algebra::fmt_rat(&k.abs()))),
                None => (false, format!("({})*{d}", c.display_with(var))),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("a", "x"))
    }
}

impl fmt::Debug for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearODE({self} = 0)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn c(n: i64) -> RatFunc {
        RatFunc::constant(int(n))
    }

    #[test]
    fn rejects_non_monic() {
        assert_eq!(LinearODE::new(vec![c(1), c(2)]).unwrap_err(), Error::NotMonic);
        assert_eq!(LinearODE::new(vec![c(1)]).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn apply_to_polynomial() {
        // a'' - 2a' on x^2 gives 2 - 4x
        let op = LinearODE::new(vec![c(0), c(-2), c(1)]).unwrap();
        let f = RatFunc::from_poly(Poly::from_ints(&[0, 0, 1]));
        assert_eq!(op.apply(&f), RatFunc::from_poly(Poly::from_ints(&[2, -4])));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let x = RatFunc::x();
        let inner = LinearODE::new(vec![x.clone(), c(1)]).unwrap();
        let outer = LinearODE::new(vec![c(3), RatFunc::new(Poly::one(), Poly::x()).unwrap(), c(1)]).unwrap();
        let composed = outer.compose(&inner);
        assert_eq!(composed.order(), 3);
        let f = RatFunc::new(Poly::from_ints(&[1, 2, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(composed.apply(&f), outer.apply(&inner.apply(&f)));
    }

    #[test]
    fn display() {
        let op = LinearODE::new(vec![c(0), c(-2), c(1)]).unwrap();
        assert_eq!(op.to_string(), "a'' - 2*a'");
    }
}
