use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Poly, RatFunc};
use crate::error::Result;
use crate::groupoid::{
    change_of_basis_symbolic, infinitesimal_pullback_symbolic, invariant_symbolic, lie_expression,
    parallel_basis_y_symbolic, sl2_basis_e_symbolic, AffineStructure,
};
use crate::jet::{faa_di_bruno, lam, prolong, FrameVectorField, Jet3, JetExpr, JetSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub results: Vec<IdentityResult>,
}

impl SuiteResult {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

fn letter_jet(c: char) -> Jet3<JetExpr> {
    Jet3::new(
        JetExpr::letter(c, 0),
        JetExpr::letter(c, 1),
        JetExpr::letter(c, 2),
        JetExpr::letter(c, 3),
    )
}

fn schwarzian_cocycle() -> Result<(bool, String)> {
    let (f, g) = (letter_jet('f'), letter_jet('g'));
    let lhs = faa_di_bruno(&g, &f).schwarzian();
    let rhs = &(&g.schwarzian() * &f.d1.pow(2)) + &f.schwarzian();
    Ok((lhs == rhs, format!("S(g∘f) - (S(g)∘f)·f'^2 - S(f) = {}", &lhs - &rhs)))
}

fn prolonged_action() -> Result<(bool, String)> {
    let x3 = prolong('a', 3)?;
    let got = x3.apply(&invariant_symbolic());
    let expected = &lie_expression('a') * &lam(1).pow(2);
    Ok((got == expected, format!("X^(3) I = {got}")))
}

fn parallel_brackets() -> Result<(bool, String)> {
    let x2 = prolong('a', 2)?;
    let [y0, y1, y2] = parallel_basis_y_symbolic();
    let top = &lie_expression('a') * &lam(1).pow(3);
    let expected = FrameVectorField::new(2, vec![JetExpr::zero(), JetExpr::zero(), top])?;
    let b0 = y0.bracket(&x2)?;
    let ok = y1.bracket(&x2)?.is_zero() && y2.bracket(&x2)?.is_zero() && b0 == expected;
    Ok((ok, format!("[Y0, X^(2)] top coefficient = {}", b0.coeff(2))))
}

fn change_of_basis() -> Result<(bool, String)> {
    let y = parallel_basis_y_symbolic();
    let e = sl2_basis_e_symbolic();
    let m = change_of_basis_symbolic();
    for (i, (row, yi)) in m.iter().zip(&y).enumerate() {
        if &FrameVectorField::combination(row, &e)? != yi {
            return Ok((false, format!("row {i} does not reproduce Y{i}")));
        }
    }
    Ok((
        true,
        "Y = M E with M = [[1, 0, R(λ₀)/2], [0, 1, 0], [0, 0, 1/2]]".into(),
    ))
}

fn sl2_closure() -> Result<(bool, String)> {
    let [em1, e0, e1] = sl2_basis_e_symbolic();
    let ok = e0.bracket(&e1)? == e1.scale(&JetExpr::int(-1))
        && e0.bracket(&em1)? == em1
        && e1.bracket(&em1)? == e0.scale(&JetExpr::int(2));
    Ok((ok, "[E0, E1] = -E1, [E0, E-1] = E-1, [E1, E-1] = 2 E0".into()))
}

/// `R = r′ − r²/2` and `R′` in the letters of `r`.
fn curvature_of_connection(i: u8) -> JetExpr {
    let r = |k| JetExpr::letter('r', k);
    let big_r = &r(1) - &r(0).pow(2).scale(&rat(1, 2));
    (0..i).fold(big_r, |e, _| e.lambda_derivative())
}

fn affine_inclusion() -> Result<(bool, String)> {
    let delta_r = infinitesimal_pullback_symbolic();
    let lhs = &delta_r.lambda_derivative() - &(&JetExpr::letter('r', 0) * &delta_r);
    let rhs = lie_expression('a').substitute(&|s| match s {
        JetSymbol::Letter('R', i) => Some(curvature_of_connection(i)),
        _ => None,
    })?;
    let symbolic = lhs == rhs;

    let r = RatFunc::new(Poly::from_ints(&[1, 0, 1]), Poly::x())?;
    let a = RatFunc::new(Poly::from_ints(&[2, -1, 0, 1]), Poly::from_ints(&[-1, 1]))?;
    let affine = AffineStructure::new(r.clone())?;
    let lie = affine.to_projective().lie_operator().apply(&a);
    let dr = affine.variation_of(&a);
    let concrete = lie == &dr.derivative() - &(&r * &dr);
    Ok((
        symbolic && concrete,
        format!("(d/dλ - r)(a'' + r a' + r' a) = a''' + 2Ra' + R'a: symbolic {symbolic}, sample {concrete}"),
    ))
}

fn affine_reduction() -> Result<(bool, String)> {
    let a = |i| JetExpr::letter('a', i);
    let r = |i| JetExpr::letter('r', i);
    let expected = &(&a(2) + &(&r(0) * &a(1))) + &(&r(1) * &a(0));
    let variation = infinitesimal_pullback_symbolic() == expected;

    let r = RatFunc::new(Poly::from_ints(&[-4]), Poly::x())?;
    let structure = AffineStructure::new(r.clone())?;
    let big_r = &r.derivative() - &(&r * &r).scale(&rat(1, 2));
    let round_trip = structure.to_projective().curvature() == &big_r
        && AffineStructure::from_riccati(&r.scale(&rat(-1, 2)))? == structure
        && structure.to_projective().curvature() == &RatFunc::new(Poly::from_ints(&[-4]), Poly::from_ints(&[0, 0, 1]))?;
    Ok((
        variation && round_trip,
        format!("δr = a'' + r a' + r' a: {variation}; R = r' - r^2/2 for r = -4/x: {round_trip}"),
    ))
}

type Check = fn() -> Result<(bool, String)>;

/// Re-derives the symbolic identities the classifier relies on.
pub fn verify_identities() -> SuiteResult {
    let checks: [(&str, Check); 7] = [
        ("schwarzian cocycle", schwarzian_cocycle),
        ("prolonged action on the invariant", prolonged_action),
        ("parallel frame brackets", parallel_brackets),
        ("change of basis", change_of_basis),
        ("sl2 closure", sl2_closure),
        ("affine inclusion", affine_inclusion),
        ("affine reduction", affine_reduction),
    ];
    let results = checks
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = f().unwrap_or_else(|e| (false, e.to_string()));
            IdentityResult {
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    SuiteResult { results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let suite = verify_identities();
        for r in &suite.results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        assert_eq!(suite.results.len(), 7);
    }
}
