use super::{LinearODE, ProjectiveStructure};
use crate::algebra::{int, rat, rational_poles, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::jet::{DiffeoJet3, JetExpr, JetSymbol};

/// Affine structure on the line, given by its connection form `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineStructure {
    r: RatFunc,
}

impl AffineStructure {
    pub fn new(r: RatFunc) -> Result<Self> {
        rational_poles(&r, -1)?;
        Ok(AffineStructure { r })
    }

    /// The reduction `r = −2u` attached to a Riccati solution `u`.
    pub fn from_riccati(u: &RatFunc) -> Result<Self> {
        Self::new(u.scale(&int(-2)))
    }

    pub fn connection(&self) -> &RatFunc {
        &self.r
    }

    /// `a ↦ a″ + r·a′ + r′·a`.
    pub fn affine_operator(&self) -> LinearODE {
        LinearODE::new(vec![self.r.derivative(), self.r.clone(), RatFunc::one()]).expect("monic")
    }

    /// The projective structure `R = r′ − r²/2`.
    pub fn to_projective(&self) -> ProjectiveStructure {
        let r2 = &self.r * &self.r;
        ProjectiveStructure::new(&self.r.derivative() - &r2.scale(&rat(1, 2)))
            .expect("poles of r′ − r²/2 are poles of r")
    }

    /// `δr = a″ + r·a′ + r′·a` for the letter `a`.
    pub fn variation_delta_r(&self, a: char) -> JetExpr {
        let r = JetExpr::from_ratfunc(&self.r);
        let rp = JetExpr::from_ratfunc(&self.r.derivative());
        &(&JetExpr::letter(a, 2) + &(&r * &JetExpr::letter(a, 1))) + &(&rp * &JetExpr::letter(a, 0))
    }

    /// `δr` for a concrete infinitesimal generator `a`.
    pub fn variation_of(&self, a: &RatFunc) -> RatFunc {
        self.affine_operator().apply(a)
    }

    /// Value at the source of `φ_λλ/φ_λ + φ_λ·r(φ)`, the transformed connection.
    pub fn pullback_value(&self, sigma: &DiffeoJet3) -> Result<Rat> {
        let j = &sigma.jet;
        if num_traits::Zero::is_zero(&j.d1) {
            return Err(Error::DegenerateJet);
        }
        Ok(&j.d2 / &j.d1 + &j.d1 * self.r.eval(&j.value)?)
    }
}

/// `d/dt|₀` of the transformed connection along the flow `λ ↦ λ + t·a(λ)`,
/// with `r` and `a` letters; equals `a″ + ra′ + r′a`.
pub fn infinitesimal_pullback_symbolic() -> JetExpr {
    let t = JetSymbol::Letter('t', 0);
    let tt = JetExpr::symbol(t);
    let a = |i| JetExpr::letter('a', i);
    let r = |i| JetExpr::letter('r', i);
    // jet of φ_t = λ + t·a(λ); r(φ_t) is replaced by its first-order Taylor term
    let d1 = &JetExpr::one() + &(&tt * &a(1));
    let d2 = &tt * &a(2);
    let r_at = &r(0) + &(&(&tt * &a(0)) * &r(1));
    let transformed = &(&d2 / &d1) + &(&d1 * &r_at);
    transformed
        .partial(t)
        .substitute(&|s| (s == t).then(JetExpr::zero))
        .expect("denominator is 1 at t = 0")
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::testing::{poly, ratfunc};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn lie_operator_factors_through_affine_operator(r in ratfunc(2, 2, 3)) {
            let affine = AffineStructure::new(r.clone()).unwrap();
            let shift = LinearODE::new(vec![r.scale(&int(-1)), RatFunc::one()]).unwrap();
            let factored = shift.compose(&affine.affine_operator());
            prop_assert_eq!(factored, affine.to_projective().lie_operator());
        }

        #[test]
        fn composition_matches_application(
            r in ratfunc(2, 2, 3),
            s in ratfunc(1, 1, 2),
            f in poly(3),
        ) {
            let outer = AffineStructure::new(r).unwrap().affine_operator();
            let inner = AffineStructure::new(s).unwrap().to_projective().psi_operator();
            let f = RatFunc::from_poly(f);
            prop_assert_eq!(outer.compose(&inner).apply(&f), outer.apply(&inner.apply(&f)));
        }
    }
}
