use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{fmt_rat, int, series, series_at, Rat};
use crate::error::{Error, Result};
use crate::groupoid::LinearODE;

/// Truncated fundamental system of a linear operator at an ordinary point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSeries {
    pub point: Rat,
    /// Highest power of `λ − point` kept.
    pub order: usize,
    /// Taylor coefficients; solution `i` has `y^(j)(point) = δ_ij` for `j < n`.
    pub solutions: Vec<Vec<Rat>>,
}

fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * int(k as i64))
}

/// `(k + i)! / k!`
fn rising(k: usize, i: usize) -> Rat {
    (k + 1..=k + i).fold(Rat::one(), |acc, j| acc * int(j as i64))
}

/// Taylor coefficients of the operator's coefficients at `p`, or an error if
/// `p` is singular.
fn coefficient_series(op: &LinearODE, p: &Rat, n: usize) -> Result<Vec<Vec<Rat>>> {
    op.coefficients()
        .iter()
        .map(|c| series_at(c, p, n).map_err(|_| Error::SingularPoint { at: fmt_rat(p) }))
        .collect()
}

/// Coefficients of `L(y)` through `t^count−1` where `y = Σ y_k t^k`,
/// `t = λ − p`. `y` must have at least `count + order` terms.
pub fn apply_to_series(op: &LinearODE, p: &Rat, y: &[Rat], count: usize) -> Result<Vec<Rat>> {
    let cs = coefficient_series(op, p, count)?;
    let mut out = vec![Rat::zero(); count];
    for (i, c) in cs.iter().enumerate() {
        let dy: Vec<Rat> = (0..count)
            .map(|k| y.get(k + i).map_or_else(Rat::zero, |v| v * rising(k, i)))
            .collect();
        for (o, t) in out.iter_mut().zip(series::mul(c, &dy, count)) {
            *o += t;
        }
    }
    Ok(out)
}

/// Fundamental system of `L` at the ordinary point `p`, truncated at `t^n`.
pub fn series_solutions(op: &LinearODE, p: &Rat, n: usize) -> Result<FundamentalSeries> {
    let ord = op.order();
    let cs: Vec<(Vec<BigInt>, BigInt)> = coefficient_series(op, p, n)?
        .iter()
        .take(ord)
        .map(|c| series::integer_form(c))
        .collect();
    let solutions = (0..ord)
        .map(|s| {
            // y_k = ys[k] / e, with e the common denominator so far
            let len = n.max(ord - 1) + 1;
            let first = Rat::one() / factorial(s);
            let mut e = first.denom().clone();
            let mut ys = vec![BigInt::zero(); len];
            ys[s] = first.numer().clone();
            for m in 0..=n.saturating_sub(ord) {
                if m + ord > n {
                    break;
                }
                let mut acc = Rat::zero();
                for (i, (c, d)) in cs.iter().enumerate() {
                    let mut sum = BigInt::zero();
                    for k in 0..=m {
                        let ck = &c[m - k];
                        if !ck.is_zero() && !ys[k + i].is_zero() {
                            sum += ck * rising(k, i).numer() * &ys[k + i];
                        }
                    }
                    acc += Rat::new(sum, d * &e);
                }
                let next = -acc / rising(m, ord);
                let scale = next.denom() / next.denom().gcd(&e);
                if !scale.is_one() {
                    for y in ys.iter_mut() {
                        *y *= &scale;
                    }
                    e *= &scale;
                }
                ys[m + ord] = next.numer() * (&e / next.denom());
            }
            ys.truncate(n + 1);
            ys.into_iter().map(|y| Rat::new(y, e.clone())).collect()
        })
        .collect();
    Ok(FundamentalSeries {
        point: p.clone(),
        order: n,
        solutions,
    })
}

impl FundamentalSeries {
    /// Wronskian of the truncated system at the expansion point.
    pub fn wronskian_at_point(&self) -> Rat {
        let n = self.solutions.len();
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                self.solutions
                    .iter()
                    .map(|y| y.get(j).cloned().unwrap_or_else(Rat::zero) * factorial(j))
                    .collect()
            })
            .collect();
        determinant(&mut m)
    }

    /// Whether `f` (given by its Taylor coefficients at the same point) is a
    /// linear combination of the solutions through the truncation order.
    pub fn spans(&self, f: &[Rat]) -> bool {
        let n = self.solutions.len();
        // a solution is fixed by its first n Taylor coefficients
        let combo: Vec<Rat> = (0..=self.order)
            .map(|k| {
                (0..n)
                    .map(|s| {
                        let init = f.get(s).cloned().unwrap_or_else(Rat::zero) * factorial(s);
                        init * &self.solutions[s][k]
                    })
                    .sum()
            })
            .collect();
        (0..=self.order).all(|k| combo[k] == f.get(k).cloned().unwrap_or_else(Rat::zero))
    }
}

fn determinant(m: &mut [Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly, RatFunc};

    fn op(coeffs: &[i64]) -> LinearODE {
        LinearODE::new(coeffs.iter().map(|&c| RatFunc::constant(int(c))).collect()).unwrap()
    }

    #[test]
    fn free_particle() {
        let fs = series_solutions(&op(&[0, 0, 1]), &int(0), 3).unwrap();
        assert_eq!(fs.solutions[0], vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(fs.solutions[1], vec![int(0), int(1), int(0), int(0)]);
        assert_eq!(fs.wronskian_at_point(), int(1));
    }

    #[test]
    fn harmonic_oscillator() {
        let fs = series_solutions(&op(&[1, 0, 1]), &int(0), 4).unwrap();
        assert_eq!(fs.solutions[0], vec![int(1), int(0), rat(-1, 2), int(0), rat(1, 24)]);
        assert_eq!(fs.solutions[1], vec![int(0), int(1), int(0), rat(-1, 6), int(0)]);
    }

    #[test]
    fn third_order_flat() {
        let fs = series_solutions(&op(&[0, 0, 0, 1]), &int(2), 5).unwrap();
        assert_eq!(fs.solutions[2][2], rat(1, 2));
        assert!(fs.solutions.iter().all(|y| y[3..].iter().all(Rat::is_zero)));
    }

    #[test]
    fn residual_vanishes_through_order() {
        let c = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[3, 0, 1])).unwrap();
        let l = LinearODE::new(vec![c.clone(), c.derivative(), RatFunc::one()]).unwrap();
        let fs = series_solutions(&l, &int(1), 20).unwrap();
        for y in &fs.solutions {
            let res = apply_to_series(&l, &int(1), y, 19).unwrap();
            assert!(res.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn singular_point_rejected() {
        let l = LinearODE::new(vec![RatFunc::new(Poly::one(), Poly::x()).unwrap(), RatFunc::one()]).unwrap();
        assert!(matches!(
            series_solutions(&l, &int(0), 5),
            Err(Error::SingularPoint { .. })
        ));
    }
}
