//! Proptest strategies for rationals, polynomials and rational functions with
//! rational poles.

use proptest::prelude::*;

use super::{rat, Poly, Rat, RatFunc};

pub fn small_rat(num: i64, den: i64) -> impl Strategy<Value = Rat> {
    (-num..=num, 1..=den).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rat(num: i64, den: i64) -> impl Strategy<Value = Rat> {
    small_rat(num, den).prop_filter("nonzero", |q| *q != rat(0, 1))
}

pub fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(5, 3), 0..=max_degree + 1).prop_map(Poly::from_coeffs)
}

/// `Π (x − pᵢ)^eᵢ` over distinct rational `pᵢ`, total degree at most `max_degree`.
pub fn pole_factor(max_poles: usize, max_degree: usize) -> impl Strategy<Value = (Poly, Vec<Rat>)> {
    prop::collection::vec((small_rat(4, 2), 1..=2u32), 0..=max_poles).prop_map(move |picks| {
        let mut den = Poly::one();
        let mut poles: Vec<Rat> = Vec::new();
        let mut degree = 0;
        for (p, e) in picks {
            if poles.contains(&p) || degree + e as usize > max_degree {
                continue;
            }
            degree += e as usize;
            den = &den * &Poly::linear(&p).pow(e);
            poles.push(p);
        }
        (den, poles)
    })
}

pub fn ratfunc(max_poles: usize, num_degree: usize, den_degree: usize) -> impl Strategy<Value = RatFunc> {
    (poly(num_degree), pole_factor(max_poles, den_degree))
        .prop_map(|(num, (den, _))| RatFunc::new(num, den).expect("nonzero denominator"))
}

/// A rational point that is not among `avoid`.
pub fn point_avoiding(avoid: Vec<Rat>) -> impl Strategy<Value = Rat> {
    small_rat(7, 3).prop_filter("ordinary point", move |p| !avoid.contains(p))
}
