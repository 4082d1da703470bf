//! Kovacic's algorithm for `y″ = r·y` over `ℚ(x)` with rational poles.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::surd::{rat_sqrt, same_class, split_sqrt};
use crate::algebra::{
    fmt_rat, int, laurent_at_infinity, nullspace, order_at_infinity, rat, rational_kernel, rational_poles, series,
    PoleData, Poly, Rat, RatFunc,
};
use crate::error::Result;

/// `1/(x − c)^k`
fn inv_pow(c: &Rat, k: usize) -> RatFunc {
    RatFunc::new(Poly::one(), Poly::linear(c).pow(k as u32)).expect("nonzero")
}

fn x_pow(k: usize) -> RatFunc {
    RatFunc::from_poly(Poly::monomial(int(1), k))
}

/// Local data of `r` at its poles and at infinity.
pub(crate) struct LocalData {
    pub poles: Vec<PoleData>,
    /// Order at infinity; `None` when `r = 0`.
    pub infinity_order: Option<i64>,
    /// Expansion at infinity, `r = Σ c_k x^{−(o+k)}`.
    pub infinity: Vec<Rat>,
}

impl LocalData {
    pub fn new(r: &RatFunc) -> Result<Self> {
        let poles = rational_poles(r, -1)?;
        if r.is_zero() {
            return Ok(LocalData {
                poles,
                infinity_order: None,
                infinity: Vec::new(),
            });
        }
        let o = order_at_infinity(r)?;
        let count = (2 - o.min(0) / 2 + 2) as usize;
        let (_, infinity) = laurent_at_infinity(r, count)?;
        Ok(LocalData {
            poles,
            infinity_order: Some(o),
            infinity,
        })
    }

    /// `b` with `r ~ b/x²` at infinity (zero when the order exceeds 2).
    fn infinity_b(&self) -> Option<Rat> {
        match self.infinity_order {
            None => Some(Rat::zero()),
            Some(o) if o > 2 => Some(Rat::zero()),
            Some(2) => Some(self.infinity[0].clone()),
            _ => None,
        }
    }
}

/// Candidate local contribution in case 1: `α` and the part of `ω`, each as
/// `rational + irrational·√n`.
#[derive(Clone, Debug)]
struct Choice {
    alpha: Rat,
    alpha_irr: Rat,
    omega: RatFunc,
    omega_irr: RatFunc,
    n: BigInt,
}

impl Choice {
    fn rational(alpha: Rat, omega: RatFunc) -> Self {
        Choice {
            alpha,
            alpha_irr: Rat::zero(),
            omega,
            omega_irr: RatFunc::zero(),
            n: BigInt::one(),
        }
    }
}

/// `α = ½ ± ½√(1 + 4b)`, paired with `α/(x − c)` at finite places.
fn order_two_choices(b: &Rat, at: Option<&Rat>) -> Vec<Choice> {
    let (m, n) = split_sqrt(&(int(1) + int(4) * b));
    let half = rat(1, 2);
    let pole = |a: &Rat| at.map_or_else(RatFunc::zero, |c| inv_pow(c, 1).scale(a));
    let signs: &[i64] = if m.is_zero() { &[1] } else { &[1, -1] };
    signs
        .iter()
        .map(|&s| {
            let irr = &half * &m * int(s);
            if n.is_one() {
                let alpha = &half + irr;
                Choice::rational(alpha.clone(), pole(&alpha))
            } else {
                Choice {
                    alpha: half.clone(),
                    omega: pole(&half),
                    omega_irr: pole(&irr),
                    alpha_irr: irr,
                    n: n.clone(),
                }
            }
        })
        .collect()
}

/// Truncated square root `h̃` of `g/g₀` and the correction `b`, for the
/// leading part `[√r]` of length `len` and `b` read at index `len`.
fn sqrt_data(g: &[Rat], len: usize) -> (Vec<Rat>, Rat) {
    let g0 = &g[0];
    let unit: Vec<Rat> = g.iter().map(|c| c / g0).collect();
    let h = series::sqrt_unit(&unit, len);
    let cross: Rat = (0..len).filter(|&i| len - i < len).map(|i| &h[i] * &h[len - i]).sum();
    let b = g.get(len).cloned().unwrap_or_else(Rat::zero) - g0 * cross;
    (h, b)
}

/// Choices for a pole of even order `2ν ≥ 4` (finite) or order `−2ν ≤ 0`
/// (infinity), with `[√r] = m√n·q`.
fn irregular_choices(
    g: &[Rat],
    nu: i64,
    len: usize,
    q_of: impl Fn(&[Rat]) -> RatFunc,
    at: Option<&Rat>,
) -> Vec<Choice> {
    let (m, n) = split_sqrt(&g[0]);
    let (h, b) = sqrt_data(g, len);
    let q = q_of(&h);
    // α± = base ± (b/(2mn))√n
    let base = match at {
        Some(_) => Rat::new(BigInt::from(nu), BigInt::from(2)),
        None => Rat::new(BigInt::from(-nu), BigInt::from(2)),
    };
    let n_rat = Rat::from_integer(n.clone());
    let delta = &b / (int(2) * &m * &n_rat);
    let pole = |a: &Rat| at.map_or_else(RatFunc::zero, |c| inv_pow(c, 1).scale(a));
    [1i64, -1]
        .iter()
        .map(|&s| {
            let sq = q.scale(&(&m * int(s)));
            let irr = &delta * int(s);
            if n.is_one() {
                let alpha = &base + irr;
                Choice::rational(alpha.clone(), &sq + &pole(&alpha))
            } else {
                Choice {
                    alpha: base.clone(),
                    omega: pole(&base),
                    omega_irr: &sq + &pole(&irr),
                    alpha_irr: irr,
                    n: n.clone(),
                }
            }
        })
        .collect()
}

fn finite_choices(pd: &PoleData) -> std::result::Result<Vec<Choice>, String> {
    let c = &pd.location;
    match pd.order {
        1 => Ok(vec![Choice::rational(int(1), inv_pow(c, 1))]),
        2 => Ok(order_two_choices(&pd.coeff(-2), Some(c))),
        k if k % 2 == 0 => {
            let nu = (k / 2) as i64;
            let g: Vec<Rat> = (0..nu).map(|j| pd.coeff(j - 2 * nu)).collect();
            let len = (nu - 1) as usize;
            let q_of = |h: &[Rat]| {
                (0..len).fold(RatFunc::zero(), |acc, j| {
                    &acc + &inv_pow(c, nu as usize - j).scale(&h[j])
                })
            };
            Ok(irregular_choices(&g, nu, len, q_of, Some(c)))
        }
        k => Err(format!("pole at {} has odd order {k} > 2", fmt_rat(c))),
    }
}

fn infinity_choices(local: &LocalData) -> std::result::Result<Vec<Choice>, String> {
    match local.infinity_order {
        None => Ok(vec![
            Choice::rational(int(0), RatFunc::zero()),
            Choice::rational(int(1), RatFunc::zero()),
        ]),
        Some(o) if o > 2 => Ok(vec![
            Choice::rational(int(0), RatFunc::zero()),
            Choice::rational(int(1), RatFunc::zero()),
        ]),
        Some(2) => Ok(order_two_choices(&local.infinity[0], None)),
        Some(o) if o <= 0 && o % 2 == 0 => {
            let nu = -o / 2;
            let len = (nu + 1) as usize;
            let g = &local.infinity[..=len];
            let q_of = |h: &[Rat]| {
                RatFunc::from_poly((0..len).fold(Poly::zero(), |acc, j| {
                    &acc + &Poly::monomial(h[j].clone(), nu as usize - j)
                }))
            };
            Ok(irregular_choices(g, nu, len, q_of, None))
        }
        Some(o) => Err(format!("order {o} at infinity is odd and at most 2")),
    }
}

/// Outcome of case 1.
#[derive(Clone, Debug, Default)]
pub(crate) struct CaseOne {
    /// Distinct rational Riccati solutions `u = y′/y`.
    pub rational: Vec<RatFunc>,
    /// Set when some family succeeds only over a quadratic extension, or
    /// cannot be decided over one.
    pub extension: Option<String>,
    /// Why no family applies, when none does.
    pub failure: Option<String>,
}

/// Rows of one equation `Σ_b L_b(P_b) = 0` in the coefficients of polynomials
/// `P_b` of degree `≤ d`, where each `L_b` is given by its coefficients.
fn equation_rows(blocks: &[Vec<RatFunc>], d: usize) -> Vec<Vec<Rat>> {
    let a = blocks.iter().flatten().fold(Poly::one(), |acc, c| acc.lcm(c.denom()));
    let mut images: Vec<Poly> = Vec::new();
    for op in blocks {
        let scaled: Vec<Poly> = op
            .iter()
            .map(|c| c.numer() * &a.exact_div(c.denom()).expect("lcm is divisible"))
            .collect();
        for k in 0..=d {
            let image = scaled
                .iter()
                .enumerate()
                .take(k + 1)
                .filter(|(_, c)| !c.is_zero())
                .fold(Poly::zero(), |acc, (j, c)| {
                    let f: Rat = (0..j).map(|i| int((k - i) as i64)).product();
                    &acc + &(c * &Poly::monomial(f, k - j))
                });
            images.push(image);
        }
    }
    let nrows = images.iter().filter_map(Poly::degree).max().map_or(0, |m| m + 1);
    (0..nrows)
        .map(|e| images.iter().map(|p| p.coeff(e)).collect())
        .collect()
}

/// `P″ + 2ωP′ + (ω′ + ω² − r)P = 0` for `ω = ω₀ + √n·ω₁`, `deg P ≤ d`.
/// Returns the kernel as coefficient vectors of `(P₀, P₁)` with `P = P₀ + √n·P₁`.
fn solve_p_equation(r: &RatFunc, w0: &RatFunc, w1: &RatFunc, n: &BigInt, d: usize) -> Vec<Vec<Rat>> {
    let n = Rat::from_integer(n.clone());
    let a = &(&w0.derivative() + &(w0 * w0)) + &(&(w1 * w1).scale(&n) - r);
    let b = &w1.derivative() + &(w0 * w1).scale(&int(2));
    let main = vec![a, w0.scale(&int(2)), RatFunc::one()];
    if w1.is_zero() {
        return nullspace(&equation_rows(&[main], d), d + 1);
    }
    let cross = vec![b, w1.scale(&int(2))];
    let cross_n: Vec<RatFunc> = cross.iter().map(|c| c.scale(&n)).collect();
    let mut rows = equation_rows(&[main.clone(), cross_n], d);
    rows.extend(equation_rows(&[cross, main], d));
    nullspace(&rows, 2 * (d + 1))
}

/// Riccati residual `u′ + u² − r`.
pub(crate) fn riccati_residual(u: &RatFunc, r: &RatFunc) -> RatFunc {
    &(&u.derivative() + &(u * u)) - r
}

pub(crate) fn case_one(r: &RatFunc, local: &LocalData) -> CaseOne {
    let mut places = Vec::new();
    for pd in &local.poles {
        match finite_choices(pd) {
            Ok(c) => places.push(c),
            Err(e) => {
                return CaseOne {
                    failure: Some(format!("case 1: {e}")),
                    ..Default::default()
                }
            }
        }
    }
    let inf = match infinity_choices(local) {
        Ok(c) => c,
        Err(e) => {
            return CaseOne {
                failure: Some(format!("case 1: {e}")),
                ..Default::default()
            }
        }
    };
    let mut out = CaseOne::default();
    let mut admissible = false;
    // infinity is the most significant index, its "+" sign first
    let total: usize = places.iter().map(Vec::len).product::<usize>() * inf.len();
    for idx in 0..total {
        let mut rest = idx;
        let mut picks = Vec::with_capacity(places.len() + 1);
        for p in places.iter().rev() {
            picks.push((&p[rest % p.len()], -1));
            rest /= p.len();
        }
        picks.push((&inf[rest], 1));

        let mut d = Rat::zero();
        let mut omega = RatFunc::zero();
        let mut classes: Vec<(BigInt, Rat, RatFunc)> = Vec::new();
        for (c, sign) in picks {
            d += &c.alpha * int(sign);
            omega = &omega + &c.omega;
            if c.alpha_irr.is_zero() && c.omega_irr.is_zero() {
                continue;
            }
            let slot = classes
                .iter_mut()
                .find_map(|(k, di, wi)| same_class(k, &c.n).map(|f| (di, wi, f)));
            match slot {
                Some((di, wi, f)) => {
                    *di += &c.alpha_irr * &f * int(sign);
                    *wi = &*wi + &c.omega_irr.scale(&f);
                }
                None => classes.push((c.n.clone(), &c.alpha_irr * int(sign), c.omega_irr.clone())),
            }
        }
        if classes.iter().any(|(_, di, _)| !di.is_zero()) || !d.is_integer() || d < Rat::zero() {
            continue;
        }
        admissible = true;
        let d = d.to_integer().to_usize().expect("degree bound fits");
        classes.retain(|(_, _, wi)| !wi.is_zero());
        match classes.as_slice() {
            [] => {
                for v in solve_p_equation(r, &omega, &RatFunc::zero(), &BigInt::one(), d) {
                    let p = RatFunc::from_poly(Poly::from_coeffs(v));
                    let u = &omega + &p.derivative().checked_div(&p).expect("nonzero");
                    if !out.rational.contains(&u) {
                        out.rational.push(u);
                    }
                }
            }
            [(n, _, w1)] => {
                if !solve_p_equation(r, &omega, w1, n, d).is_empty() && out.extension.is_none() {
                    out.extension = Some(format!(
                        "case 1 holds only over Q(sqrt({n})): the exponential part has irrational coefficients"
                    ));
                }
            }
            _ => {
                if out.extension.is_none() {
                    out.extension = Some("case 1 candidate needs several independent square roots".to_string());
                }
            }
        }
    }
    if out.rational.is_empty() && out.extension.is_none() {
        out.failure = Some(if admissible {
            "case 1: no family admits a polynomial solution".to_string()
        } else {
            "case 1: no family has a non-negative integer degree".to_string()
        });
    }
    out
}

/// `(1 + 4b)` has a rational square root `s`: the values `base ± step·s`.
fn spread(b: &Rat, base: i64, steps: &[Rat]) -> BTreeSet<Rat> {
    let mut out = BTreeSet::from([int(base)]);
    if let Some(s) = rat_sqrt(&(int(1) + int(4) * b)) {
        for k in steps {
            for sign in [1, -1] {
                let e = int(base) + k * &s * int(sign);
                if e.is_integer() {
                    out.insert(e);
                }
            }
        }
    }
    out
}

fn families(sets: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    sets.iter().fold(vec![Vec::new()], |acc, set| {
        acc.into_iter()
            .flat_map(|prefix| {
                set.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e.clone());
                    v
                })
            })
            .collect()
    })
}

/// Case 2: returns `φ` with `ω² − φω + (φ′/2 + φ²/2 − r) = 0`, or the reason it fails.
pub(crate) fn case_two(r: &RatFunc, local: &LocalData) -> std::result::Result<RatFunc, String> {
    if !local
        .poles
        .iter()
        .any(|p| p.order == 2 || (p.order > 2 && p.order % 2 == 1))
    {
        return Err("case 2: no pole of order 2 or of odd order above 2".to_string());
    }
    let mut sets: Vec<Vec<Rat>> = local
        .poles
        .iter()
        .map(|p| match p.order {
            1 => vec![int(4)],
            2 => spread(&p.coeff(-2), 2, &[int(2)]).into_iter().collect(),
            k => vec![int(k as i64)],
        })
        .collect();
    let inf: Vec<Rat> = match local.infinity_order {
        None => vec![int(0), int(2), int(4)],
        Some(o) if o > 2 => vec![int(0), int(2), int(4)],
        Some(2) => spread(&local.infinity[0], 2, &[int(2)]).into_iter().collect(),
        Some(o) => vec![int(o)],
    };
    sets.push(inf);
    let rp = r.derivative();
    for fam in families(&sets) {
        let (ec, einf) = fam.split_at(fam.len() - 1);
        let d = (&einf[0] - ec.iter().sum::<Rat>()) / int(2);
        if !d.is_integer() || d < Rat::zero() {
            continue;
        }
        let d = d.to_integer().to_usize().expect("degree bound fits");
        let theta = local.poles.iter().zip(ec).fold(RatFunc::zero(), |acc, (p, e)| {
            &acc + &inv_pow(&p.location, 1).scale(&(e / int(2)))
        });
        let t1 = theta.derivative();
        let t2 = t1.derivative();
        let theta_sq = &theta * &theta;
        let c0 = &(&(&t2 + &(&theta * &t1).scale(&int(3))) + &(&theta_sq * &theta))
            - &(&(r * &theta).scale(&int(4)) + &rp.scale(&int(2)));
        let c1 = &(&theta_sq.scale(&int(3)) + &t1.scale(&int(3))) - &r.scale(&int(4));
        let op = vec![c0, c1, theta.scale(&int(3)), RatFunc::one()];
        if let Some(v) = nullspace(&equation_rows(&[op], d), d + 1).into_iter().next() {
            let p = RatFunc::from_poly(Poly::from_coeffs(v));
            return Ok(&theta + &p.derivative().checked_div(&p).expect("nonzero"));
        }
    }
    Err("case 2: no family admits a polynomial solution".to_string())
}

/// Case 3 for one `n ∈ {4, 6, 12}`: returns the polynomial `P` or the reason it fails.
pub(crate) fn case_three(r: &RatFunc, local: &LocalData, n: usize) -> std::result::Result<Poly, String> {
    if local.poles.iter().any(|p| p.order > 2) {
        return Err("case 3: a pole has order above 2".to_string());
    }
    let Some(gamma) = local.infinity_b() else {
        return Err("case 3: order at infinity is below 2".to_string());
    };
    let steps: Vec<Rat> = (1..=n / 2).map(|k| rat(12 * k as i64, n as i64)).collect();
    let mut sets: Vec<Vec<Rat>> = local
        .poles
        .iter()
        .map(|p| match p.order {
            1 => vec![int(12)],
            _ => spread(&p.coeff(-2), 6, &steps).into_iter().collect(),
        })
        .collect();
    sets.push(spread(&gamma, 6, &steps).into_iter().collect());
    let scale = rat(n as i64, 12);
    let s = local
        .poles
        .iter()
        .fold(Poly::one(), |acc, p| &acc * &Poly::linear(&p.location));
    let s_rf = RatFunc::from_poly(s.clone());
    let sp = s_rf.derivative();
    let s2r = &(&s_rf * &s_rf) * r;
    for fam in families(&sets) {
        let (ec, einf) = fam.split_at(fam.len() - 1);
        let d = &scale * (&einf[0] - ec.iter().sum::<Rat>());
        if !d.is_integer() || d < Rat::zero() {
            continue;
        }
        let d = d.to_integer().to_usize().expect("degree bound fits");
        let theta = local.poles.iter().zip(ec).fold(RatFunc::zero(), |acc, (p, e)| {
            &acc + &inv_pow(&p.location, 1).scale(&(&scale * e))
        });
        let s_theta = &s_rf * &theta;
        let last = |p: RatFunc| -> RatFunc {
            // P_n = −P; P_{i−1} = −S P_i′ + ((n−i)S′ − Sθ) P_i − (n−i)(i+1) S² r P_{i+1}
            let mut next = RatFunc::zero();
            let mut cur = -&p;
            for i in (0..=n).rev() {
                let ni = int((n - i) as i64);
                let prev = &(&(-&(&s_rf * &cur.derivative())) + &(&(&sp.scale(&ni) - &s_theta) * &cur))
                    - &(&s2r * &next).scale(&(ni * int(i as i64 + 1)));
                next = cur;
                cur = prev;
            }
            cur
        };
        let columns: Vec<Vec<RatFunc>> = (0..=d).map(|k| vec![last(x_pow(k))]).collect();
        if let Some(v) = rational_kernel(&columns).into_iter().next() {
            return Ok(Poly::from_coeffs(v));
        }
    }
    Err(format!("case 3 (n = {n}): no family admits a polynomial solution"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    fn run_one(r: &RatFunc) -> CaseOne {
        case_one(r, &LocalData::new(r).unwrap())
    }

    #[test]
    fn constant_potential_has_exponential_solutions() {
        let out = run_one(&RatFunc::constant(int(1)));
        assert_eq!(
            out.rational,
            vec![RatFunc::constant(int(1)), RatFunc::constant(int(-1))]
        );
    }

    #[test]
    fn irrational_exponent_needs_extension() {
        let out = run_one(&RatFunc::constant(int(2)));
        assert!(out.rational.is_empty());
        assert!(out.extension.is_some());
    }

    #[test]
    fn airy_fails_every_case() {
        let r = rf(&[0, 1], &[1]);
        let local = LocalData::new(&r).unwrap();
        assert!(case_one(&r, &local).failure.is_some());
        assert!(case_two(&r, &local).is_err());
        for n in [4, 6, 12] {
            assert!(case_three(&r, &local, n).is_err());
        }
    }

    #[test]
    fn quadratic_potential() {
        // r = x² + 1 has u = x
        let out = run_one(&rf(&[1, 0, 1], &[1]));
        assert_eq!(out.rational, vec![RatFunc::x()]);
    }

    #[test]
    fn euler_equation() {
        // r = 2/x²: y = x², 1/x
        let out = run_one(&rf(&[2], &[0, 0, 1]));
        let mut got = out.rational.clone();
        got.sort_by_key(|u| u.to_string());
        assert_eq!(got, vec![rf(&[-1], &[0, 1]), rf(&[2], &[0, 1])]);
        for u in &out.rational {
            assert!(riccati_residual(u, &rf(&[2], &[0, 0, 1])).is_zero());
        }
    }

    #[test]
    fn higher_order_pole_exponential() {
        // y = exp(1/x): u = −1/x², r = u′ + u² = 2/x³ + 1/x⁴
        let r = &rf(&[2], &[0, 0, 0, 1]) + &rf(&[1], &[0, 0, 0, 0, 1]);
        let out = run_one(&r);
        assert!(out.rational.contains(&rf(&[-1], &[0, 0, 1])));
    }
}
