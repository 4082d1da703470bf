use num_traits::{One, Zero};

use super::LinearODE;
use crate::algebra::{int, rat, rational_poles, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::jet::{lam, schwarzian_frame, DiffeoJet3, FrameVectorField, Jet3, JetExpr, JetSymbol};

/// 3×3 matrix of exact rationals, row-major.
pub type Matrix3 = [[Rat; 3]; 3];

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn identity_matrix() -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() }))
}

/// `R(λ)` as a letter.
pub fn curvature_letter() -> JetExpr {
    JetExpr::letter('R', 0)
}

/// `R(λ₀)` as a constant symbol.
pub fn base_curvature() -> JetExpr {
    JetExpr::anchored('R', 0)
}

/// `a‴ + 2Ra′ + R′a` with `a` and `R` as letters.
pub fn lie_expression(a: char) -> JetExpr {
    let r = curvature_letter();
    let rp = JetExpr::letter('R', 1);
    &(&JetExpr::letter(a, 3) + &(&r * &JetExpr::letter(a, 1)).scale(&int(2))) + &(&rp * &JetExpr::letter(a, 0))
}

/// `R(λ)λ_ε² + λ_εεε/λ_ε − (3/2)(λ_εε/λ_ε)²` with `R` a letter.
pub fn invariant_symbolic() -> JetExpr {
    &(&curvature_letter() * &lam(1).pow(2)) + &schwarzian_frame()
}

fn second_order_tail(r: &JetExpr) -> JetExpr {
    // (3/2)λ_εε²/λ_ε − Rλ_ε³
    &(&lam(2).pow(2) / &lam(1)).scale(&rat(3, 2)) - &(r * &lam(1).pow(3))
}

/// `(Y₀, Y₁, Y₂)` on second-order frames, with `R` a letter and `R(λ₀)` anchored.
pub fn parallel_basis_y_symbolic() -> [FrameVectorField; 3] {
    let y0 = vec![
        lam(1),
        lam(2),
        &(&base_curvature() * &lam(1)) + &second_order_tail(&curvature_letter()),
    ];
    [
        FrameVectorField::new(2, y0).expect("second-order coefficients"),
        scaling_field(),
        FrameVectorField::new(2, vec![JetExpr::zero(), JetExpr::zero(), lam(1)]).expect("second-order coefficients"),
    ]
}

fn scaling_field() -> FrameVectorField {
    FrameVectorField::new(2, vec![JetExpr::zero(), lam(1), lam(2).scale(&int(2))]).expect("second-order coefficients")
}

/// `(E₋₁, E₀, E₁)` on second-order frames, with `R` a letter.
pub fn sl2_basis_e_symbolic() -> [FrameVectorField; 3] {
    let em1 = vec![lam(1), lam(2), second_order_tail(&curvature_letter())];
    [
        FrameVectorField::new(2, em1).expect("second-order coefficients"),
        scaling_field(),
        FrameVectorField::new(2, vec![JetExpr::zero(), JetExpr::zero(), lam(1).scale(&int(2))])
            .expect("second-order coefficients"),
    ]
}

/// Matrix `M` with `(Y₀, Y₁, Y₂)ᵀ = M·(E₋₁, E₀, E₁)ᵀ`, entries in `R(λ₀)`.
pub fn change_of_basis_symbolic() -> [[JetExpr; 3]; 3] {
    let (o, z) = (JetExpr::one(), JetExpr::zero());
    [
        [o.clone(), z.clone(), base_curvature().scale(&rat(1, 2))],
        [z.clone(), o, z.clone()],
        [z.clone(), z, JetExpr::constant(rat(1, 2))],
    ]
}

/// Projective structure on the line, given by `S(τ) = R` for its charts `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveStructure {
    r: RatFunc,
}

impl ProjectiveStructure {
    pub fn new(r: RatFunc) -> Result<Self> {
        rational_poles(&r, -1)?;
        Ok(ProjectiveStructure { r })
    }

    pub fn curvature(&self) -> &RatFunc {
        &self.r
    }

    /// Smallest non-negative integer that is not a pole of `R`.
    pub fn default_base_point(&self) -> Rat {
        let den = self.r.denom();
        (0..)
            .map(int)
            .find(|p| !den.eval(p).is_zero())
            .expect("finitely many poles")
    }

    fn check_base(&self, base: &Rat) -> Result<Rat> {
        self.r.eval(base)
    }

    fn specialize(&self, e: &JetExpr, base: Option<&Rat>) -> Result<JetExpr> {
        let at_base = base.map(|b| self.check_base(b)).transpose()?;
        let r = &self.r;
        e.substitute(&|s| match s {
            JetSymbol::Letter('R', i) => Some(JetExpr::from_ratfunc(&r.nth_derivative(i as usize))),
            JetSymbol::Anchored('R', 0) => at_base.clone().map(JetExpr::constant),
            _ => None,
        })
    }

    /// The differential invariant with `R` substituted as a function of `λ`.
    pub fn invariant(&self) -> JetExpr {
        self.specialize(&invariant_symbolic(), None)
            .expect("substitution keeps λ_ε in the denominator")
    }

    /// Value of the invariant on a concrete frame.
    pub fn invariant_at(&self, frame: &Jet3<Rat>) -> Result<Rat> {
        if frame.d1.is_zero() {
            return Err(Error::DegenerateJet);
        }
        Ok(self.r.eval(&frame.value)? * &frame.d1 * &frame.d1 + frame.schwarzian())
    }

    /// `S(φ) + φ_λ²R(φ) − R(λ)`; zero exactly on the groupoid.
    pub fn kummer_residual(&self, sigma: &DiffeoJet3) -> Result<Rat> {
        let j = &sigma.jet;
        let r_target = self.r.eval(&j.value)?;
        let r_source = self.r.eval(&sigma.source)?;
        Ok(j.schwarzian() + &j.d1 * &j.d1 * r_target - r_source)
    }

    /// The unique groupoid element with the given 2-jet.
    pub fn kummer_completion(&self, source: Rat, value: Rat, d1: Rat, d2: Rat) -> Result<DiffeoJet3> {
        if d1.is_zero() {
            return Err(Error::DegenerateJet);
        }
        let r_source = self.r.eval(&source)?;
        let r_target = self.r.eval(&value)?;
        let ratio = &d2 / &d1;
        let d3 = &d1 * (r_source - &d1 * &d1 * r_target + rat(3, 2) * &ratio * &ratio);
        DiffeoJet3::new(source, value, d1, d2, d3)
    }

    /// `λ_εεε − (3/2)λ_εε²/λ_ε + R(λ)λ_ε³`; zero exactly on adapted frames.
    pub fn adapted_frame_residual(&self, frame: &Jet3<Rat>) -> Result<Rat> {
        if frame.d1.is_zero() {
            return Err(Error::DegenerateJet);
        }
        let r = self.r.eval(&frame.value)?;
        Ok(&frame.d3 - rat(3, 2) * &frame.d2 * &frame.d2 / &frame.d1 + r * &frame.d1 * &frame.d1 * &frame.d1)
    }

    /// `(Y₀, Y₁, Y₂)` at base point `base`.
    pub fn parallel_basis_y(&self, base: &Rat) -> Result<[FrameVectorField; 3]> {
        let [y0, y1, y2] = parallel_basis_y_symbolic();
        Ok([y0.try_map(|c| self.specialize(c, Some(base)))?, y1, y2])
    }

    /// `(E₋₁, E₀, E₁)`.
    pub fn sl2_basis_e(&self) -> [FrameVectorField; 3] {
        let [em1, e0, e1] = sl2_basis_e_symbolic();
        let em1 = em1
            .try_map(|c| self.specialize(c, None))
            .expect("substitution keeps λ_ε in the denominator");
        [em1, e0, e1]
    }

    /// `M` with `(Y₀, Y₁, Y₂)ᵀ = M·(E₋₁, E₀, E₁)ᵀ`.
    pub fn change_of_basis(&self, base: &Rat) -> Result<Matrix3> {
        let r0 = self.check_base(base)?;
        Ok([
            [int(1), int(0), r0 / int(2)],
            [int(0), int(1), int(0)],
            [int(0), int(0), rat(1, 2)],
        ])
    }

    /// `a ↦ a‴ + 2R·a′ + R′·a`.
    pub fn lie_operator(&self) -> LinearODE {
        LinearODE::new(vec![
            self.r.derivative(),
            self.r.scale(&int(2)),
            RatFunc::zero(),
            RatFunc::one(),
        ])
        .expect("monic")
    }

    /// `ψ ↦ ψ″ + (1/2)R·ψ`.
    pub fn psi_operator(&self) -> LinearODE {
        LinearODE::new(vec![self.r.scale(&rat(1, 2)), RatFunc::zero(), RatFunc::one()]).expect("monic")
    }
}

/// Jacobian of left translation by `σ` at the frame `(λ₀, 1, 0)`.
pub fn left_translation_jacobian(sigma: &DiffeoJet3) -> Result<Matrix3> {
    left_translation_jacobian_at(sigma, &[int(1), int(0)])
}

/// Jacobian of left translation by `σ` at the second-order frame
/// `(λ₀, λ_ε, λ_εε)` based at the source of `σ`; `tail = [λ_ε, λ_εε]`.
pub fn left_translation_jacobian_at(sigma: &DiffeoJet3, tail: &[Rat; 2]) -> Result<Matrix3> {
    let j = &sigma.jet;
    if j.d1.is_zero() {
        return Err(Error::DegenerateJet);
    }
    let [l1, l2] = tail;
    let z = Rat::zero;
    Ok([
        [j.d1.clone(), z(), z()],
        [&j.d2 * l1, j.d1.clone(), z()],
        [&j.d3 * l1 * l1 + &j.d2 * l2, int(2) * &j.d2 * l1, j.d1.clone()],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn structure(r: RatFunc) -> ProjectiveStructure {
        ProjectiveStructure::new(r).unwrap()
    }

    fn constant(n: i64) -> ProjectiveStructure {
        structure(RatFunc::constant(int(n)))
    }

    fn frame(v: [i64; 4]) -> Jet3<Rat> {
        Jet3::new(int(v[0]), int(v[1]), int(v[2]), int(v[3]))
    }

    #[test]
    fn rejects_irrational_poles() {
        let r = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 0, 1])).unwrap();
        assert!(matches!(
            ProjectiveStructure::new(r),
            Err(Error::UnsupportedPoles { .. })
        ));
    }

    #[test]
    fn invariant_vanishes_on_flat_identity_frame() {
        assert!(constant(0).invariant_at(&frame([3, 1, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn kummer_residuals() {
        let flat = constant(0);
        assert!(flat.kummer_residual(&DiffeoJet3::identity(int(2))).unwrap().is_zero());
        let mobius = DiffeoJet3::new(int(0), int(1), int(1), int(2), int(6)).unwrap();
        assert!(flat.kummer_residual(&mobius).unwrap().is_zero());
        let bent = DiffeoJet3::new(int(0), int(0), int(1), int(1), int(0)).unwrap();
        assert_eq!(flat.kummer_residual(&bent).unwrap(), rat(-3, 2));
    }

    #[test]
    fn completion_lies_in_groupoid() {
        let p = structure(RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 1])).unwrap());
        let s = p.kummer_completion(int(2), int(3), rat(-1, 2), int(5)).unwrap();
        assert!(p.kummer_residual(&s).unwrap().is_zero());
    }

    #[test]
    fn adapted_frame_residuals() {
        assert!(constant(0)
            .adapted_frame_residual(&frame([0, 1, 0, 0]))
            .unwrap()
            .is_zero());
        assert!(constant(-2)
            .adapted_frame_residual(&frame([0, 1, 0, 2]))
            .unwrap()
            .is_zero());
        assert_eq!(
            constant(0).adapted_frame_residual(&frame([0, 1, 1, 0])).unwrap(),
            rat(-3, 2)
        );
        assert_eq!(
            constant(0).adapted_frame_residual(&frame([0, 0, 1, 0])).unwrap_err(),
            Error::DegenerateJet
        );
    }

    #[test]
    fn jacobian_of_identity() {
        let j = left_translation_jacobian(&DiffeoJet3::identity(int(4))).unwrap();
        assert_eq!(j, identity_matrix());
    }

    #[test]
    fn flat_parallel_basis() {
        let [y0, _, _] = constant(0).parallel_basis_y(&int(0)).unwrap();
        assert_eq!(y0.coeff(2), (&lam(2).pow(2) / &lam(1)).scale(&rat(3, 2)));
    }

    #[test]
    fn change_of_basis_reproduces_parallel_basis() {
        let p = structure(RatFunc::new(Poly::from_ints(&[2, 1]), Poly::from_ints(&[-1, 0, 1])).unwrap());
        let base = int(3);
        let y = p.parallel_basis_y(&base).unwrap();
        let e = p.sl2_basis_e();
        let m = p.change_of_basis(&base).unwrap();
        for (row, yi) in m.iter().zip(&y) {
            let w: Vec<JetExpr> = row.iter().cloned().map(JetExpr::constant).collect();
            assert_eq!(&FrameVectorField::combination(&w, &e).unwrap(), yi);
        }
    }

    #[test]
    fn base_point_at_pole_rejected() {
        let p = structure(RatFunc::new(Poly::one(), Poly::x()).unwrap());
        assert!(matches!(p.parallel_basis_y(&int(0)), Err(Error::Pole { .. })));
        assert_eq!(p.default_base_point(), int(1));
    }

    #[test]
    fn prolonged_field_acts_on_invariant_through_lie_operator() {
        let x3 = crate::jet::prolong('a', 3).unwrap();
        let expected = &lie_expression('a') * &lam(1).pow(2);
        assert_eq!(x3.apply(&invariant_symbolic()), expected);
    }

    #[test]
    fn parallel_fields_commute_with_prolongation_up_to_lie_operator() {
        let x2 = crate::jet::prolong('a', 2).unwrap();
        let [y0, y1, y2] = parallel_basis_y_symbolic();
        assert!(y1.bracket(&x2).unwrap().is_zero());
        assert!(y2.bracket(&x2).unwrap().is_zero());
        let top = &lie_expression('a') * &lam(1).pow(3);
        let expected = FrameVectorField::new(2, vec![JetExpr::zero(), JetExpr::zero(), top]).unwrap();
        assert_eq!(y0.bracket(&x2).unwrap(), expected);
    }

    #[test]
    fn e_basis_structure_constants() {
        let [em1, e0, e1] = sl2_basis_e_symbolic();
        let neg = |f: &FrameVectorField| f.scale(&JetExpr::int(-1));
        assert_eq!(e0.bracket(&e1).unwrap(), neg(&e1));
        assert_eq!(e0.bracket(&em1).unwrap(), em1);
        assert_eq!(e1.bracket(&em1).unwrap(), e0.scale(&JetExpr::int(2)));
    }

    #[test]
    fn symbolic_change_of_basis() {
        let y = parallel_basis_y_symbolic();
        let e = sl2_basis_e_symbolic();
        for (row, yi) in change_of_basis_symbolic().iter().zip(&y) {
            assert_eq!(&FrameVectorField::combination(row, &e).unwrap(), yi);
        }
    }

    #[test]
    fn lie_operators() {
        assert_eq!(constant(0).lie_operator().to_string(), "a'''");
        assert_eq!(constant(-2).lie_operator().to_string(), "a''' - 4*a'");
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::testing::{nonzero_rat, ratfunc, small_rat};

    fn structure() -> impl Strategy<Value = ProjectiveStructure> {
        ratfunc(2, 2, 3).prop_map(|r| ProjectiveStructure::new(r).unwrap())
    }

    fn regular(s: &ProjectiveStructure, p: &Rat) -> bool {
        s.curvature().eval(p).is_ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn completion_lies_in_groupoid(
            s in structure(),
            a in small_rat(7, 3),
            b in small_rat(7, 3),
            d1 in nonzero_rat(5, 3),
            d2 in small_rat(5, 3),
        ) {
            prop_assume!(regular(&s, &a) && regular(&s, &b));
            let sigma = s.kummer_completion(a, b, d1, d2).unwrap();
            prop_assert!(s.kummer_residual(&sigma).unwrap().is_zero());
        }

        #[test]
        fn groupoid_is_closed_under_composition(
            s in structure(),
            points in prop::array::uniform3(small_rat(7, 3)),
            d1 in prop::array::uniform2(nonzero_rat(5, 3)),
            d2 in prop::array::uniform2(small_rat(5, 3)),
        ) {
            prop_assume!(points.iter().all(|p| regular(&s, p)));
            let [a, b, c] = points;
            let inner = s.kummer_completion(a, b.clone(), d1[0].clone(), d2[0].clone()).unwrap();
            let outer = s.kummer_completion(b, c, d1[1].clone(), d2[1].clone()).unwrap();
            let sigma = outer.compose(&inner).unwrap();
            prop_assert!(s.kummer_residual(&sigma).unwrap().is_zero());
        }

        #[test]
        fn invariant_is_preserved_by_the_groupoid(
            s in structure(),
            a in small_rat(7, 3),
            b in small_rat(7, 3),
            d1 in nonzero_rat(5, 3),
            d2 in small_rat(5, 3),
            tail in (nonzero_rat(5, 3), small_rat(5, 3), small_rat(5, 3)),
        ) {
            prop_assume!(regular(&s, &a) && regular(&s, &b));
            let sigma = s.kummer_completion(a.clone(), b, d1, d2).unwrap();
            let frame = Jet3::new(a, tail.0, tail.1, tail.2);
            let moved = sigma.act_on_frame(&frame).unwrap();
            prop_assert_eq!(s.invariant_at(&moved).unwrap(), s.invariant_at(&frame).unwrap());
        }

        #[test]
        fn adapted_residual_is_scaled_invariant(
            s in structure(),
            a in small_rat(7, 3),
            d1 in nonzero_rat(5, 3),
            d2 in small_rat(5, 3),
            d3 in small_rat(5, 3),
        ) {
            prop_assume!(regular(&s, &a));
            let frame = Jet3::new(a, d1.clone(), d2, d3);
            let scaled = &d1 * s.invariant_at(&frame).unwrap();
            prop_assert_eq!(s.adapted_frame_residual(&frame).unwrap(), scaled);
        }

        #[test]
        fn jacobian_is_lower_triangular(
            a in small_rat(7, 3),
            jet in (small_rat(7, 3), nonzero_rat(5, 3), small_rat(5, 3), small_rat(5, 3)),
            tail in (nonzero_rat(5, 3), small_rat(5, 3)),
        ) {
            let (b, d1, d2, d3) = jet;
            let sigma = DiffeoJet3::new(a, b, d1.clone(), d2, d3).unwrap();
            let m = left_translation_jacobian_at(&sigma, &[tail.0, tail.1]).unwrap();
            prop_assert!(m[0][1].is_zero() && m[0][2].is_zero() && m[1][2].is_zero());
            let det = &m[0][0] * &m[1][1] * &m[2][2];
            prop_assert_eq!(det, &d1 * &d1 * &d1);
        }
    }
}
