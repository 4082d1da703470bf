use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{int, integer_roots, nullspace, rational_poles, Poly, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::groupoid::LinearODE;

/// `e(e−1)…(e−i+1)` as a polynomial in `e`.
fn falling(i: usize) -> Poly {
    (0..i).fold(Poly::one(), |acc, k| &acc * &Poly::linear(&int(k as i64)))
}

/// Valuation and leading coefficient of a nonzero `f` at `p`.
fn local_leading(f: &RatFunc, p: &Rat) -> (i64, Rat) {
    let first = |poly: &Poly| -> (i64, Rat) {
        let s = poly.shift(p);
        let k = s.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero");
        (k as i64, s.coeffs()[k].clone())
    };
    let (vn, ln) = first(f.numer());
    let (vd, ld) = first(f.denom());
    (vn - vd, ln / ld)
}

/// Exponent of `x` and leading coefficient of a nonzero `f` at infinity.
fn leading_at_infinity(f: &RatFunc) -> (i64, Rat) {
    let dn = f.numer().degree().expect("nonzero");
    let dd = f.denom().degree().expect("nonzero");
    (
        dn as i64 - dd as i64,
        f.numer().leading_coeff().expect("nonzero") / f.denom().leading_coeff().expect("nonzero"),
    )
}

/// Indicial polynomial from `(shift_i, lc_i)` pairs, selecting the extremal
/// shift (minimum when `lowest`, maximum otherwise).
fn indicial(data: &[(usize, i64, Rat)], lowest: bool) -> Poly {
    let ext = if lowest {
        data.iter().map(|d| d.1).min()
    } else {
        data.iter().map(|d| d.1).max()
    }
    .expect("the leading coefficient is nonzero");
    data.iter()
        .filter(|d| d.1 == ext)
        .fold(Poly::zero(), |acc, (i, _, lc)| &acc + &falling(*i).scale(lc))
}

fn to_i64(n: &BigInt) -> i64 {
    n.to_i64().expect("indicial root fits in i64")
}

/// Largest pole order a rational solution may have at `p`.
pub(crate) fn pole_bound(op: &LinearODE, p: &Rat) -> usize {
    let data: Vec<(usize, i64, Rat)> = op
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let (v, lc) = local_leading(c, p);
            (i, v - i as i64, lc)
        })
        .collect();
    integer_roots(&indicial(&data, true))
        .iter()
        .map(to_i64)
        .min()
        .map_or(0, |m| (-m).max(0) as usize)
}

/// Largest `deg(num) − deg(den)` a rational solution may have, if any.
pub(crate) fn degree_bound(op: &LinearODE) -> Option<i64> {
    let data: Vec<(usize, i64, Rat)> = op
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let (d, lc) = leading_at_infinity(c);
            (i, d - i as i64, lc)
        })
        .collect();
    integer_roots(&indicial(&data, false)).iter().map(to_i64).max()
}

fn binomial(n: usize, k: usize) -> Rat {
    (0..k).fold(int(1), |acc, i| acc * int((n - i) as i64) / int(i as i64 + 1))
}

/// Polynomials `c_j` with `A·D·Sⁿ·L(N/D) = Σ c_j N^(j)` for every polynomial
/// `N`, where `S` is the product of the distinct linear factors of `D` and `A` clears the
/// coefficient denominators. Uses `(1/D)^(m) = Q_m/(D·S^m)` with
/// `Q_{m+1} = Q_m′S − Q_m(H + mS′)`, `H = D′S/D`.
fn twist(op: &LinearODE, den: &Poly, s: &Poly) -> Result<Vec<Poly>> {
    let n = op.order();
    let h = (&den.derivative() * s).exact_div(den)?;
    let ds = s.derivative();
    let mut q = vec![Poly::one()];
    for m in 0..n {
        let prev = &q[m];
        let next = &(&prev.derivative() * s) - &(prev * &(&h + &ds.scale(&int(m as i64))));
        q.push(next);
    }
    let a = op.coefficients().iter().fold(Poly::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<Poly> = op
        .coefficients()
        .iter()
        .map(|c| c.numer() * &a.exact_div(c.denom()).expect("lcm is divisible"))
        .collect();
    let s_pows: Vec<Poly> = (0..=n).map(|k| s.pow(k as u32)).collect();
    Ok((0..=n)
        .map(|j| {
            (j..=n).fold(Poly::zero(), |acc, i| {
                if scaled[i].is_zero() {
                    return acc;
                }
                let term = &(&scaled[i] * &q[i - j]) * &s_pows[n - (i - j)];
                &acc + &term.scale(&binomial(i, j))
            })
        })
        .collect())
}

/// `Σ c_j (x^k)^(j)`.
fn apply_twisted(c: &[Poly], k: usize) -> Poly {
    c.iter()
        .enumerate()
        .take(k + 1)
        .filter(|(_, cj)| !cj.is_zero())
        .fold(Poly::zero(), |acc, (j, cj)| {
            let coeff = falling(j).eval(&int(k as i64));
            &acc + &(cj * &Poly::monomial(coeff, k - j))
        })
}

/// Basis of the rational solutions of `L(f) = 0`.
pub fn rational_solutions(op: &LinearODE) -> Result<Vec<RatFunc>> {
    let mut points = BTreeSet::new();
    for c in op.coefficients() {
        for pd in rational_poles(c, -1)? {
            points.insert(pd.location);
        }
    }
    let bounds: Vec<(&Rat, usize)> = points.iter().map(|p| (p, pole_bound(op, p))).collect();
    let den = bounds
        .iter()
        .fold(Poly::one(), |acc, (p, b)| &acc * &Poly::linear(p).pow(*b as u32));
    let radical = bounds
        .iter()
        .filter(|(_, b)| *b > 0)
        .fold(Poly::one(), |acc, (p, _)| &acc * &Poly::linear(p));
    let Some(deg) = degree_bound(op) else {
        return Ok(Vec::new());
    };
    let top = deg + den.degree().expect("nonzero") as i64;
    if top < 0 {
        return Ok(Vec::new());
    }
    let twisted = twist(op, &den, &radical)?;
    let ncols = top as usize + 1;
    let images: Vec<Poly> = (0..ncols).map(|k| apply_twisted(&twisted, k)).collect();
    let nrows = images.iter().filter_map(Poly::degree).max().map_or(0, |d| d + 1);
    let rows: Vec<Vec<Rat>> = (0..nrows)
        .map(|e| images.iter().map(|p| p.coeff(e)).collect())
        .collect();
    let basis: Vec<RatFunc> = nullspace(&rows, ncols)
        .into_iter()
        .map(|v| RatFunc::new(Poly::from_coeffs(v), den.clone()).expect("nonzero denominator"))
        .collect();
    if let Some(bad) = basis.iter().find(|f| !op.apply(f).is_zero()) {
        return Err(Error::Verification(format!(
            "rational solution {bad} fails the operator"
        )));
    }
    Ok(basis)
}
