use std::collections::BTreeMap;

use num_traits::Zero;

use super::{fmt_rat, rational_roots, series, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// Local data of a rational function at one of its (rational) poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleData {
    pub location: Rat,
    pub order: usize,
    /// Nonzero Laurent coefficients, keyed by exponent, for exponents in
    /// `-order ..= through`.
    pub laurent: BTreeMap<i64, Rat>,
    pub through: i64,
}

impl PoleData {
    /// Laurent coefficient at exponent `k`; panics if `k` was not computed.
    pub fn coeff(&self, k: i64) -> Rat {
        assert!(
            k <= self.through,
            "Laurent coefficient {k} beyond computed depth {}",
            self.through
        );
        self.laurent.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeff(-(self.order as i64))
    }
}

/// Poles of `f` with their orders and Laurent coefficients up to exponent
/// `through`. Poles are sorted by location.
///
/// Fails with [`Error::UnsupportedPoles`] if the denominator keeps a factor
/// without rational roots.
pub fn rational_poles(f: &RatFunc, through: i64) -> Result<Vec<PoleData>> {
    let den = f.denom();
    if den.is_constant() {
        return Ok(Vec::new());
    }
    let roots = rational_roots(den);
    let mut rest = den.clone();
    let mut out = Vec::with_capacity(roots.len());
    for p in roots {
        let order = den.root_multiplicity(&p);
        let lin_pow = Poly::linear(&p).pow(order as u32);
        rest = rest.exact_div(&lin_pow)?;
        let cofactor = den.exact_div(&lin_pow)?;
        let lowest = -(order as i64);
        let terms = usize::try_from(through - lowest + 1).unwrap_or(0);
        let coeffs = series::div(f.numer().shift(&p).coeffs(), cofactor.shift(&p).coeffs(), terms);
        let laurent = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 + lowest, c))
            .collect();
        out.push(PoleData {
            location: p,
            order,
            laurent,
            through,
        });
    }
    if let Some(deg) = rest.degree().filter(|&d| d > 0) {
        return Err(Error::UnsupportedPoles {
            factor: rest.to_string(),
            degree: deg,
        });
    }
    Ok(out)
}

/// One term `coeff / (x - pole)^power` of a partial fraction decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionTerm {
    pub coeff: Rat,
    pub pole: Rat,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub polynomial: Poly,
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractions {
    /// Sums the decomposition back into a single rational function.
    pub fn recombine(&self) -> RatFunc {
        self.terms
            .iter()
            .fold(RatFunc::from_poly(self.polynomial.clone()), |acc, t| {
                let den = Poly::linear(&t.pole).pow(t.power as u32);
                let term = RatFunc::new(Poly::constant(t.coeff.clone()), den).expect("nonzero");
                &acc + &term
            })
    }
}

/// Decomposition over rational poles, terms sorted by pole then power.
pub fn partial_fractions(f: &RatFunc) -> Result<PartialFractions> {
    let poles = rational_poles(f, -1)?;
    let (polynomial, _) = f.numer().divrem(f.denom())?;
    let mut terms = Vec::new();
    for pd in poles {
        for power in 1..=pd.order {
            let c = pd.coeff(-(power as i64));
            if !c.is_zero() {
                terms.push(PartialFractionTerm {
                    coeff: c,
                    pole: pd.location.clone(),
                    power,
                });
            }
        }
    }
    Ok(PartialFractions { polynomial, terms })
}

/// Taylor coefficients of `f` at `p` through order `n` (`n + 1` values).
pub fn series_at(f: &RatFunc, p: &Rat, n: usize) -> Result<Vec<Rat>> {
    if f.denom().eval(p).is_zero() {
        return Err(Error::Pole { at: fmt_rat(p) });
    }
    Ok(series::div(
        f.numer().shift(p).coeffs(),
        f.denom().shift(p).coeffs(),
        n + 1,
    ))
}

/// `deg(den) - deg(num)`.
pub fn order_at_infinity(f: &RatFunc) -> Result<i64> {
    let dn = f.numer().degree().ok_or(Error::ZeroFunction)?;
    let dd = f.denom().degree().expect("nonzero denominator");
    Ok(dd as i64 - dn as i64)
}

/// Expansion `f = sum_k c_k x^{-(o + k)}` at infinity; returns `o` and the
/// first `count` coefficients `c_k`.
pub fn laurent_at_infinity(f: &RatFunc, count: usize) -> Result<(i64, Vec<Rat>)> {
    let o = order_at_infinity(f)?;
    let rev = |p: &Poly| -> Vec<Rat> { p.coeffs().iter().rev().cloned().collect() };
    Ok((o, series::div(&rev(f.numer()), &rev(f.denom()), count)))
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::series;
    use crate::algebra::testing::{point_avoiding, pole_factor, poly, ratfunc};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn partial_fractions_recombine(num in poly(6), (den, _) in pole_factor(4, 6)) {
            let f = RatFunc::new(num, den).unwrap();
            prop_assert_eq!(partial_fractions(&f).unwrap().recombine(), f);
        }
    }

    proptest! {
        #[test]
        fn poles_are_located_exactly(num in poly(4), (den, poles) in pole_factor(3, 5)) {
            let f = RatFunc::new(num, den).unwrap();
            let found = rational_poles(&f, 0).unwrap();
            for pd in &found {
                prop_assert!(poles.contains(&pd.location));
                prop_assert!(!pd.leading().is_zero());
            }
        }

        #[test]
        fn taylor_series_of_product_is_cauchy_product(
            (f, g, p) in (pole_factor(3, 4), ratfunc(2, 3, 3), poly(3)).prop_flat_map(|((den, mut poles), g, num)| {
                let f = RatFunc::new(num, den).unwrap();
                poles.extend(rational_poles(&g, -1).unwrap().into_iter().map(|pd| pd.location));
                (Just(f), Just(g), point_avoiding(poles))
            })
        ) {
            const N: usize = 12;
            let fg = series_at(&(&f * &g), &p, N).unwrap();
            let product = series::mul(&series_at(&f, &p, N).unwrap(), &series_at(&g, &p, N).unwrap(), N + 1);
            prop_assert_eq!(fg, product);
        }
    }
}
