use std::collections::BTreeMap;
use std::fmt;

use super::{JetExpr, JetSymbol};
use crate::error::{Error, Result};

/// Highest frame order supported by [`prolong`].
pub const MAX_JET_ORDER: usize = 3;

/// Vector field on the order-`k` frame space: `Σ_j c_j ∂/∂λ^(j)` for `j ≤ k`.
/// Zero coefficients are not stored, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct FrameVectorField {
    order: usize,
    coeffs: BTreeMap<usize, JetExpr>,
}

impl FrameVectorField {
    pub fn zero(order: usize) -> Self {
        FrameVectorField {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a field from coefficients listed by frame index (`c[j]` on `∂/∂λ^(j)`).
    pub fn new(order: usize, coeffs: Vec<JetExpr>) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::OrderOutOfRange {
                order: coeffs.len() - 1,
                max: order,
            });
        }
        for c in &coeffs {
            if let Some(s) = c
                .symbols()
                .into_iter()
                .find(|s| s.frame_order().is_some_and(|j| j > order))
            {
                return Err(Error::SymbolAboveOrder {
                    symbol: s.to_string(),
                    order,
                });
            }
        }
        Ok(FrameVectorField {
            order,
            coeffs: coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// The coordinate field `∂/∂λ^(j)` on the order-`order` frame space.
    pub fn coordinate(order: usize, j: usize) -> Result<Self> {
        let mut c = vec![JetExpr::zero(); j + 1];
        c[j] = JetExpr::one();
        Self::new(order, c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize) -> JetExpr {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Directional derivative `Σ_j c_j ∂e/∂λ^(j)`; the `∂/∂λ` component acts
    /// on letters through the chain rule.
    pub fn apply(&self, e: &JetExpr) -> JetExpr {
        self.coeffs.iter().fold(JetExpr::zero(), |acc, (&j, c)| {
            let d = if j == 0 {
                e.lambda_derivative()
            } else {
                e.partial(JetSymbol::Frame(j as u8))
            };
            &acc + &(c * &d)
        })
    }

    /// `[X, Y]` with components `X(Y_j) - Y(X_j)`.
    pub fn bracket(&self, other: &FrameVectorField) -> Result<FrameVectorField> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let coeffs = (0..=self.order)
            .map(|j| &self.apply(&other.coeff(j)) - &other.apply(&self.coeff(j)))
            .collect();
        Self::new(self.order, coeffs)
    }

    pub fn scale(&self, c: &JetExpr) -> FrameVectorField {
        FrameVectorField {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&j, a)| (j, a * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &FrameVectorField) -> Result<FrameVectorField> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let coeffs = (0..=self.order).map(|j| &self.coeff(j) + &other.coeff(j)).collect();
        Self::new(self.order, coeffs)
    }

    pub fn sub(&self, other: &FrameVectorField) -> Result<FrameVectorField> {
        self.add(&other.scale(&JetExpr::int(-1)))
    }

    /// `Σ_i weights[i] · fields[i]`.
    pub fn combination(weights: &[JetExpr], fields: &[FrameVectorField]) -> Result<FrameVectorField> {
        let order = fields.first().map(|f| f.order).unwrap_or(0);
        weights
            .iter()
            .zip(fields)
            .try_fold(Self::zero(order), |acc, (w, f)| acc.add(&f.scale(w)))
    }

    /// Applies `f` to every coefficient.
    pub fn try_map(&self, f: impl Fn(&JetExpr) -> Result<JetExpr>) -> Result<FrameVectorField> {
        let coeffs = (0..=self.order).map(|j| f(&self.coeff(j))).collect::<Result<_>>()?;
        Self::new(self.order, coeffs)
    }

    /// Drops every component above `order`.
    pub fn truncate(&self, order: usize) -> FrameVectorField {
        FrameVectorField {
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&j, _)| j <= order)
                .map(|(&j, c)| (j, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for FrameVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&j, c)| format!("({c})·∂/∂{}", JetSymbol::Frame(j as u8)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for FrameVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameVectorField[{}]({self})", self.order)
    }
}

/// Prolongation of `a(λ)∂/∂λ` to the order-`k` frame space: the coefficient
/// on `∂/∂λ^(j)` is the `j`-th total derivative of `a`.
pub fn prolong(letter: char, k: usize) -> Result<FrameVectorField> {
    if k > MAX_JET_ORDER {
        return Err(Error::OrderOutOfRange {
            order: k,
            max: MAX_JET_ORDER,
        });
    }
    let mut coeffs = Vec::with_capacity(k + 1);
    let mut c = JetExpr::letter(letter, 0);
    for _ in 0..=k {
        let next = c.total_derivative();
        coeffs.push(c);
        c = next;
    }
    FrameVectorField::new(k, coeffs)
}

/// `λ_εεε/λ_ε - (3/2)(λ_εε/λ_ε)²`
pub fn schwarzian_frame() -> JetExpr {
    use super::lam;
    let ratio = &lam(2) / &lam(1);
    &(&lam(3) / &lam(1)) - &(&ratio * &ratio).scale(&crate::algebra::rat(3, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::jet::lam;

    fn a(i: u8) -> JetExpr {
        JetExpr::letter('a', i)
    }

    #[test]
    fn prolongation_coefficients() {
        let x = prolong('a', 3).unwrap();
        assert_eq!(x.coeff(0), a(0));
        assert_eq!(x.coeff(1), &a(1) * &lam(1));
        assert_eq!(x.coeff(2), &(&a(2) * &lam(1).pow(2)) + &(&a(1) * &lam(2)));
        let top = &(&(&a(3) * &lam(1).pow(3)) + &(&a(2) * &(&lam(1) * &lam(2))).scale(&int(3))) + &(&a(1) * &lam(3));
        assert_eq!(x.coeff(3), top);
    }

    #[test]
    fn prolongation_order_capped() {
        assert!(matches!(
            prolong('a', 4),
            Err(Error::OrderOutOfRange { order: 4, max: 3 })
        ));
    }

    #[test]
    fn prolongation_truncates_consistently() {
        for k in 1..=3 {
            assert_eq!(prolong('a', k).unwrap().truncate(k - 1), prolong('a', k - 1).unwrap());
        }
    }

    #[test]
    fn apply_to_constant_and_square() {
        let x = prolong('a', 3).unwrap();
        assert!(x.apply(&JetExpr::int(7)).is_zero());
        let d = FrameVectorField::coordinate(0, 0).unwrap();
        assert_eq!(d.apply(&lam(0).pow(2)), lam(0).scale(&int(2)));
    }

    #[test]
    fn affine_bracket() {
        let d = FrameVectorField::coordinate(0, 0).unwrap();
        let e = FrameVectorField::new(0, vec![lam(0)]).unwrap();
        assert_eq!(d.bracket(&e).unwrap(), d);
    }

    #[test]
    fn scaling_bracket_on_second_order_frames() {
        let y1 = FrameVectorField::new(2, vec![JetExpr::zero(), lam(1), lam(2).scale(&int(2))]).unwrap();
        let y2 = FrameVectorField::new(2, vec![JetExpr::zero(), JetExpr::zero(), lam(1)]).unwrap();
        assert_eq!(y1.bracket(&y2).unwrap(), y2.scale(&JetExpr::int(-1)));
    }

    #[test]
    fn bracket_requires_equal_orders() {
        let d0 = FrameVectorField::coordinate(0, 0).unwrap();
        let d1 = FrameVectorField::coordinate(1, 0).unwrap();
        assert!(matches!(d0.bracket(&d1), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn coefficient_order_checked() {
        assert!(matches!(
            FrameVectorField::new(1, vec![lam(2)]),
            Err(Error::SymbolAboveOrder { .. })
        ));
    }

    #[test]
    fn schwarzian_of_affine_and_mobius_jets() {
        let s = schwarzian_frame();
        let at = |l1: i64, l2: i64, l3: i64| {
            s.eval(&|sym| match sym {
                JetSymbol::Frame(1) => Some(int(l1)),
                JetSymbol::Frame(2) => Some(int(l2)),
                JetSymbol::Frame(3) => Some(int(l3)),
                _ => None,
            })
            .unwrap()
        };
        assert_eq!(at(5, 0, 0), int(0));
        // 1/(1-λ) at 0 has derivatives 1, 2, 6
        assert_eq!(at(1, 2, 6), int(0));
        assert_eq!(at(1, 1, 0), rat(-3, 2));
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::jet::testing::field2;

    #[test]
    fn prolongation_truncates_consistently() {
        for letter in ['a', 'b'] {
            for k in 1..=MAX_JET_ORDER {
                let top = prolong(letter, k).unwrap();
                assert_eq!(top.truncate(k - 1), prolong(letter, k - 1).unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn bracket_is_antisymmetric(x in field2(), y in field2()) {
            let xy = x.bracket(&y).unwrap();
            let yx = y.bracket(&x).unwrap();
            prop_assert!(xy.add(&yx).unwrap().is_zero());
        }

        #[test]
        fn bracket_satisfies_jacobi(x in field2(), y in field2(), z in field2()) {
            let a = x.bracket(&y.bracket(&z).unwrap()).unwrap();
            let b = y.bracket(&z.bracket(&x).unwrap()).unwrap();
            let c = z.bracket(&x.bracket(&y).unwrap()).unwrap();
            prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
        }
    }
}
