use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::JetExpr;
use crate::algebra::{fmt_rat, Rat};
use crate::error::{Error, Result};

/// Scalars a 3-jet can be built from: exact rationals or symbolic expressions.
pub trait JetScalar:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn is_zero_scalar(&self) -> bool;
}

impl JetScalar for Rat {
    fn from_i64(n: i64) -> Self {
        crate::algebra::int(n)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

impl JetScalar for JetExpr {
    fn from_i64(n: i64) -> Self {
        JetExpr::int(n)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

/// Value and first three derivatives of a map at some source point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet3<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
    pub d3: T,
}

impl<T: JetScalar> Jet3<T> {
    pub fn new(value: T, d1: T, d2: T, d3: T) -> Self {
        Jet3 { value, d1, d2, d3 }
    }

    /// Jet of the identity map through `point`.
    pub fn identity(point: T) -> Self {
        Jet3::new(point, T::from_i64(1), T::from_i64(0), T::from_i64(0))
    }

    /// `d3/d1 - (3/2)(d2/d1)²`
    pub fn schwarzian(&self) -> T {
        let ratio = self.d2.clone() / self.d1.clone();
        self.d3.clone() / self.d1.clone() - T::from_i64(3) * ratio.clone() * ratio / T::from_i64(2)
    }
}

/// Jet of `outer ∘ inner`, where `outer` holds derivatives at `inner.value`
/// (Faà di Bruno to third order).
pub fn faa_di_bruno<T: JetScalar>(outer: &Jet3<T>, inner: &Jet3<T>) -> Jet3<T> {
    let (g1, g2, g3) = (outer.d1.clone(), outer.d2.clone(), outer.d3.clone());
    let (f1, f2, f3) = (inner.d1.clone(), inner.d2.clone(), inner.d3.clone());
    let f1_sq = f1.clone() * f1.clone();
    Jet3 {
        value: outer.value.clone(),
        d1: g1.clone() * f1.clone(),
        d2: g2.clone() * f1_sq.clone() + g1.clone() * f2.clone(),
        d3: g3 * f1_sq * f1.clone() + T::from_i64(3) * g2 * f1 * f2 + g1 * f3,
    }
}

/// Third-order jet of a local diffeomorphism `φ` at `source`, with exact
/// rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffeoJet3 {
    pub source: Rat,
    pub jet: Jet3<Rat>,
}

impl DiffeoJet3 {
    pub fn new(source: Rat, value: Rat, d1: Rat, d2: Rat, d3: Rat) -> Result<Self> {
        if d1.is_zero() {
            return Err(Error::DegenerateJet);
        }
        Ok(DiffeoJet3 {
            source,
            jet: Jet3::new(value, d1, d2, d3),
        })
    }

    pub fn identity(source: Rat) -> Self {
        DiffeoJet3 {
            jet: Jet3::identity(source.clone()),
            source,
        }
    }

    pub fn target(&self) -> &Rat {
        &self.jet.value
    }

    pub fn schwarzian(&self) -> Rat {
        self.jet.schwarzian()
    }

    /// `self ∘ inner`; the target of `inner` must be the source of `self`.
    pub fn compose(&self, inner: &DiffeoJet3) -> Result<DiffeoJet3> {
        if inner.jet.value != self.source {
            return Err(Error::SourceMismatch {
                inner_target: fmt_rat(&inner.jet.value),
                outer_source: fmt_rat(&self.source),
            });
        }
        Ok(DiffeoJet3 {
            source: inner.source.clone(),
            jet: faa_di_bruno(&self.jet, &inner.jet),
        })
    }

    /// Applies the jet to a frame (3-jet of a parametrization `ε ↦ λ`).
    pub fn act_on_frame(&self, frame: &Jet3<Rat>) -> Result<Jet3<Rat>> {
        if frame.value != self.source {
            return Err(Error::SourceMismatch {
                inner_target: fmt_rat(&frame.value),
                outer_source: fmt_rat(&self.source),
            });
        }
        Ok(faa_di_bruno(&self.jet, frame))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn identity_is_neutral() {
        let f = DiffeoJet3::new(int(1), int(2), int(3), int(-1), rat(1, 2)).unwrap();
        let left = DiffeoJet3::identity(int(2)).compose(&f).unwrap();
        let right = f.compose(&DiffeoJet3::identity(int(1))).unwrap();
        assert_eq!(left, f);
        assert_eq!(right, f);
    }

    #[test]
    fn second_order_chain_rule() {
        let g = Jet3::new(int(0), int(2), int(5), int(0));
        let f = Jet3::new(int(0), int(3), int(7), int(0));
        // g'' f'^2 + g' f''
        assert_eq!(faa_di_bruno(&g, &f).d2, int(5 * 9 + 2 * 7));
    }

    #[test]
    fn mismatched_sources_rejected() {
        let f = DiffeoJet3::new(int(0), int(1), int(1), int(0), int(0)).unwrap();
        let g = DiffeoJet3::identity(int(5));
        assert!(matches!(g.compose(&f), Err(Error::SourceMismatch { .. })));
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            DiffeoJet3::new(int(0), int(0), int(0), int(1), int(1)).unwrap_err(),
            Error::DegenerateJet
        );
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::testing::{nonzero_rat, small_rat};

    fn jet_at(source: Rat) -> impl Strategy<Value = DiffeoJet3> {
        (small_rat(5, 3), nonzero_rat(4, 3), small_rat(4, 3), small_rat(4, 3))
            .prop_map(move |(v, d1, d2, d3)| DiffeoJet3::new(source.clone(), v, d1, d2, d3).unwrap())
    }

    /// `(f, g, h)` composable as `h ∘ g ∘ f`.
    fn chain() -> impl Strategy<Value = (DiffeoJet3, DiffeoJet3, DiffeoJet3)> {
        small_rat(5, 3)
            .prop_flat_map(jet_at)
            .prop_flat_map(|f| {
                let g = jet_at(f.target().clone());
                (Just(f), g)
            })
            .prop_flat_map(|(f, g)| {
                let h = jet_at(g.target().clone());
                (Just(f), Just(g), h)
            })
    }

    proptest! {
        #[test]
        fn schwarzian_cocycle((f, g, _) in chain()) {
            let gf = g.compose(&f).unwrap();
            prop_assert_eq!(gf.schwarzian(), g.schwarzian() * &f.jet.d1 * &f.jet.d1 + f.schwarzian());
        }

        #[test]
        fn composition_is_associative((f, g, h) in chain()) {
            let left = h.compose(&g).unwrap().compose(&f).unwrap();
            let right = h.compose(&g.compose(&f).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn identity_is_neutral(f in small_rat(5, 3).prop_flat_map(jet_at)) {
            prop_assert_eq!(DiffeoJet3::identity(f.target().clone()).compose(&f).unwrap(), f.clone());
            prop_assert_eq!(f.compose(&DiffeoJet3::identity(f.source.clone())).unwrap(), f);
        }
    }
}
