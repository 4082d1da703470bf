use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::kovacic::{riccati_residual, CaseOne};
use super::rational_solutions;
use crate::algebra::{int, nullspace, rational_roots, Poly, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::groupoid::LinearODE;

/// How many rational solutions the Riccati equation has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountClass {
    None,
    One,
    Two,
    Infinite,
}

/// Rational solutions of `u′ + u² + R/2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiAnalysis {
    /// Verified solutions; for [`CountClass::Infinite`] a few members of the family.
    pub solutions: Vec<RatFunc>,
    pub count_class: CountClass,
}

/// Solutions `w` of `w′ = 2uw + 1`: a particular one and the homogeneous part.
fn companion_solutions(u: &RatFunc) -> Result<(Option<RatFunc>, Vec<RatFunc>)> {
    // rational w with w″ − 2uw′ − 2u′w = 0 satisfy w′ − 2uw = const
    let op = LinearODE::new(vec![u.derivative().scale(&int(-2)), u.scale(&int(-2)), RatFunc::one()])?;
    let space = rational_solutions(&op)?;
    let mut consts = Vec::with_capacity(space.len());
    for w in &space {
        let c = (&w.derivative() - &(u * w).scale(&int(2)))
            .as_constant()
            .ok_or_else(|| Error::Verification(format!("w′ − 2uw is not constant for w = {w}")))?;
        consts.push(c);
    }
    let Some(j) = consts.iter().position(|c| !c.is_zero()) else {
        return Ok((None, space));
    };
    let particular = space[j].scale(&(Rat::one() / &consts[j]));
    let homogeneous = space
        .iter()
        .zip(&consts)
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, (w, c))| w - &particular.scale(c))
        .collect();
    Ok((Some(particular), homogeneous))
}

fn push_new(out: &mut Vec<RatFunc>, u: RatFunc) {
    if !out.contains(&u) {
        out.push(u);
    }
}

/// `u + 1/w` for the solutions `w` of `w′ = 2uw + 1` among `w_p + t·w_h`, `t ∈ {0, 1}`.
fn neighbours(u: &RatFunc, limit: usize) -> Result<Vec<RatFunc>> {
    let (particular, homogeneous) = companion_solutions(u)?;
    let mut out = Vec::new();
    if let Some(w) = particular {
        out.push(u + &w.recip()?);
        for h in homogeneous.iter().take(limit) {
            let shifted = &w + h;
            if !shifted.is_zero() {
                out.push(u + &shifted.recip()?);
            }
        }
    }
    Ok(out)
}

/// `B(a, b) = ab″ + ba″ − a′b′ − 4rab`, constant on solutions of the
/// symmetric square and zero on `B(ψ², ψ²)`.
fn form(a: &RatFunc, b: &RatFunc, r: &RatFunc) -> Result<Rat> {
    let v = &(&(a * &b.nth_derivative(2)) + &(b * &a.nth_derivative(2)))
        - &(&(&a.derivative() * &b.derivative()) + &(&(a * b) * r).scale(&int(4)));
    v.as_constant()
        .ok_or_else(|| Error::Verification(format!("symmetric-square form is not constant: {v}")))
}

/// Small rational squares `a = ψ²` in the span of `basis`, giving `u = a′/(2a)`.
fn isotropic_witness(basis: &[RatFunc], r: &RatFunc) -> Result<Option<RatFunc>> {
    let n = basis.len();
    let mut gram = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = form(&basis[i], &basis[j], r)?;
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    const HEIGHT: i64 = 8;
    for h in 1..=HEIGHT {
        let range: Vec<i64> = (-h..=h).collect();
        for &x in &range {
            for &y in &range {
                for &z in &range {
                    let v = [x, y, z];
                    if v.iter().map(|c| c.abs()).max() != Some(h) {
                        continue;
                    }
                    let q: Rat = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| &gram[i][j] * int(v[i] * v[j]))
                        .sum();
                    if !q.is_zero() {
                        continue;
                    }
                    let a = (0..n).fold(RatFunc::zero(), |acc, i| &acc + &basis[i].scale(&int(v[i])));
                    if a.is_zero() {
                        continue;
                    }
                    return Ok(Some(a.derivative().checked_div(&a.scale(&int(2)))?));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn riccati_from(r: &RatFunc, sym2: &[RatFunc], case1: Option<&CaseOne>) -> Result<RiccatiAnalysis> {
    let mut solutions = Vec::new();
    let count_class = if sym2.len() == 3 {
        let psi = LinearODE::new(vec![-r.clone(), RatFunc::zero(), RatFunc::one()])?;
        let ys = rational_solutions(&psi)?;
        let log_derivative = |y: &RatFunc| y.derivative().checked_div(y);
        let witness = match ys.first() {
            Some(y) => Some(log_derivative(y)?),
            None => isotropic_witness(sym2, r)?,
        };
        if let Some(u) = witness {
            solutions.push(u.clone());
            if let [y0, y1] = ys.as_slice() {
                push_new(&mut solutions, log_derivative(y1)?);
                push_new(&mut solutions, log_derivative(&(y0 + y1))?);
            } else {
                match neighbours(&u, 1) {
                    Ok(vs) => vs.into_iter().for_each(|v| push_new(&mut solutions, v)),
                    Err(Error::UnsupportedPoles { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        CountClass::Infinite
    } else {
        // case one lists every rational solution once the family is finite
        solutions = case1.map(|c| c.rational.clone()).unwrap_or_default();
        match solutions.len() {
            0 => CountClass::None,
            1 => CountClass::One,
            2 => CountClass::Two,
            k => return Err(Error::Verification(format!("{k} isolated rational Riccati solutions"))),
        }
    };
    for u in &solutions {
        if !riccati_residual(u, r).is_zero() {
            return Err(Error::Verification(format!(
                "u = {u} does not solve the Riccati equation"
            )));
        }
    }
    Ok(RiccatiAnalysis { solutions, count_class })
}

/// Whether `exp ∫u` is algebraic: no polynomial part, only simple poles with
/// rational residues.
pub fn exp_integral_is_algebraic(u: &RatFunc) -> Result<bool> {
    let (a, b) = (u.numer(), u.denom());
    if u.is_zero() {
        return Ok(true);
    }
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(false);
    };
    let db1 = b.derivative();
    if da >= db || b.gcd(&db1).degree() != Some(0) {
        return Ok(false);
    }
    Ok(residue_polynomial(a, &db1, b)?.is_some_and(|m| {
        let roots = rational_roots(&m);
        roots.len() == m.degree().expect("nonzero")
    }))
}

/// Minimal polynomial of `a/b′` in `ℚ[x]/(b)`, whose roots are the residues of
/// `a/b` when `b` is squarefree.
fn residue_polynomial(a: &Poly, b1: &Poly, b: &Poly) -> Result<Option<Poly>> {
    let n = b.degree().expect("nonconstant");
    let reduce = |p: &Poly| p.divrem(b).map(|(_, r)| r);
    let a = reduce(a)?;
    let b1 = reduce(b1)?;
    // a^i·b′^(k−i) mod b for i = 0..=k
    let mut powers = vec![Poly::one()];
    for k in 1..=n {
        powers = powers
            .iter()
            .map(|p| reduce(&(p * &b1)))
            .chain(std::iter::once(reduce(&(&powers[k - 1] * &a))))
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<Vec<Rat>> = (0..n).map(|e| powers.iter().map(|p| p.coeff(e)).collect()).collect();
        if let Some(v) = nullspace(&rows, k + 1).into_iter().next() {
            return Ok(Some(Poly::from_coeffs(v)));
        }
    }
    Ok(None)
}
