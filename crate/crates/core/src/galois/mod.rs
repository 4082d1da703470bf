//! Differential Galois analysis of `ψ″ + ½Rψ = 0` and of its symmetric
//! square: rational solutions, rational Riccati solutions, Kovacic's
//! algorithm and the resulting Galois class.

mod class;
mod kovacic;
mod rational;
mod riccati;
mod series;
mod surd;

pub use class::{lie_irreducible, Finiteness, GaloisClass, GaloisTag, GaloisWitness};
pub use rational::rational_solutions;
pub use riccati::{exp_integral_is_algebraic, CountClass, RiccatiAnalysis};
pub use series::{apply_to_series, series_solutions, FundamentalSeries};

use crate::algebra::{rat, RatFunc};
use crate::error::{Error, Result};
use crate::groupoid::ProjectiveStructure;
use kovacic::{case_one, case_three, case_two, LocalData};

/// Everything the classifier needs about one projective structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAnalysis {
    /// Basis of the rational solutions of `a‴ + 2Ra′ + R′a = 0`.
    pub sym2_basis: Vec<RatFunc>,
    pub riccati: RiccatiAnalysis,
    pub class: GaloisClass,
}

/// `r = −R/2`, the potential of `y″ = r·y`.
fn potential(p: &ProjectiveStructure) -> RatFunc {
    p.curvature().scale(&rat(-1, 2))
}

/// Runs the full analysis once.
pub fn analyze(p: &ProjectiveStructure) -> Result<GaloisAnalysis> {
    let r = potential(p);
    let sym2_basis = rational_solutions(&p.lie_operator())?;
    if sym2_basis.len() == 3 {
        let riccati = riccati::riccati_from(&r, &sym2_basis, None)?;
        let class = GaloisClass {
            tag: GaloisTag::ProjectivelyTrivial,
            witness: GaloisWitness::Sym2Basis(sym2_basis.clone()),
        };
        return Ok(GaloisAnalysis {
            sym2_basis,
            riccati,
            class,
        });
    }
    let local = LocalData::new(&r)?;
    let one = case_one(&r, &local);
    let riccati = riccati::riccati_from(&r, &sym2_basis, Some(&one))?;
    let class = classify_rest(&r, &local, &one, &riccati)?;
    Ok(GaloisAnalysis {
        sym2_basis,
        riccati,
        class,
    })
}

fn classify_rest(
    r: &RatFunc,
    local: &LocalData,
    one: &kovacic::CaseOne,
    riccati: &RiccatiAnalysis,
) -> Result<GaloisClass> {
    if let Some(u) = riccati.solutions.first() {
        let tag = match riccati.count_class {
            CountClass::Two => {
                let finite = riccati
                    .solutions
                    .iter()
                    .map(exp_integral_is_algebraic)
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                if finite {
                    GaloisTag::TorusFinite
                } else {
                    GaloisTag::TorusInfinite
                }
            }
            _ => GaloisTag::BorelFull,
        };
        return Ok(GaloisClass {
            tag,
            witness: GaloisWitness::Riccati(u.clone()),
        });
    }
    if let Some(reason) = &one.extension {
        return Err(Error::AlgebraicExtensionRequired { reason: reason.clone() });
    }
    let mut failures: Vec<String> = one.failure.iter().cloned().collect();
    match case_two(r, local) {
        Ok(phi) => {
            return Ok(GaloisClass {
                tag: GaloisTag::Dihedral(Finiteness::Undetermined),
                witness: GaloisWitness::QuadraticRiccati(phi),
            })
        }
        Err(e) => failures.push(e),
    }
    for (n, tag) in [
        (4, GaloisTag::Tetrahedral),
        (6, GaloisTag::Octahedral),
        (12, GaloisTag::Icosahedral),
    ] {
        match case_three(r, local, n) {
            Ok(polynomial) => {
                return Ok(GaloisClass {
                    tag,
                    witness: GaloisWitness::Primitive { n, polynomial },
                })
            }
            Err(e) => failures.push(e),
        }
    }
    Ok(GaloisClass {
        tag: GaloisTag::FullSL2,
        witness: GaloisWitness::Failures(failures),
    })
}

/// Rational solutions of `u′ + u² + R/2 = 0`, with their count class.
pub fn riccati_rational(p: &ProjectiveStructure) -> Result<RiccatiAnalysis> {
    let r = potential(p);
    let sym2 = rational_solutions(&p.lie_operator())?;
    if sym2.len() == 3 {
        return riccati::riccati_from(&r, &sym2, None);
    }
    let local = LocalData::new(&r)?;
    riccati::riccati_from(&r, &sym2, Some(&case_one(&r, &local)))
}

/// Galois group of `ψ″ + ½Rψ = 0` in `SL₂`, with its certificate.
pub fn kovacic_classify(p: &ProjectiveStructure) -> Result<GaloisClass> {
    Ok(analyze(p)?.class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Poly, Rat};

    fn structure(num: &[i64], den: &[i64]) -> ProjectiveStructure {
        ProjectiveStructure::new(RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()).unwrap()
    }

    #[test]
    fn flat_structure_is_trivial() {
        let a = analyze(&structure(&[0], &[1])).unwrap();
        assert_eq!(a.class.tag, GaloisTag::ProjectivelyTrivial);
        assert_eq!(a.riccati.count_class, CountClass::Infinite);
        assert_eq!(a.riccati.solutions[0], RatFunc::zero());
    }

    #[test]
    fn constant_negative_curvature() {
        let a = analyze(&structure(&[-2], &[1])).unwrap();
        assert_eq!(a.class.tag, GaloisTag::TorusInfinite);
        assert_eq!(a.riccati.solutions, vec![RatFunc::one(), RatFunc::constant(int(-1))]);
        assert_eq!(a.riccati.count_class, CountClass::Two);
    }

    #[test]
    fn borel_example() {
        let a = analyze(&structure(&[-2, 0, -2], &[1])).unwrap();
        assert_eq!(a.class.tag, GaloisTag::BorelFull);
        assert_eq!(a.riccati.solutions, vec![RatFunc::x()]);
        assert_eq!(a.riccati.count_class, CountClass::One);
    }

    #[test]
    fn airy_is_full() {
        let a = analyze(&structure(&[0, -2], &[1])).unwrap();
        assert_eq!(a.class.tag, GaloisTag::FullSL2);
        assert_eq!(a.riccati.count_class, CountClass::None);
        assert!(matches!(a.class.witness, GaloisWitness::Failures(ref f) if !f.is_empty()));
    }

    #[test]
    fn euler_structure_is_trivial() {
        let a = analyze(&structure(&[-4], &[0, 0, 1])).unwrap();
        assert_eq!(a.class.tag, GaloisTag::ProjectivelyTrivial);
        assert_eq!(a.sym2_basis.len(), 3);
    }

    /// `R = −2r` for the hypergeometric potential with exponent differences
    /// `l` at 0, `m` at 1 and `n` at infinity.
    fn schwarz(l: Rat, m: Rat, n: Rat) -> ProjectiveStructure {
        let one = int(1);
        let c0 = (&l * &l - &one) / int(4);
        let c1 = (&m * &m - &one) / int(4);
        let c2 = (&n * &n - &l * &l - &m * &m + &one) / int(4);
        let x = RatFunc::x();
        let xm1 = &x - &RatFunc::one();
        let r = &(&(&x * &x).recip().unwrap().scale(&c0) + &(&xm1 * &xm1).recip().unwrap().scale(&c1))
            + &(&x * &xm1).recip().unwrap().scale(&c2);
        ProjectiveStructure::new(r.scale(&int(-2))).unwrap()
    }

    #[test]
    fn schwarz_list() {
        let cases = [
            ((1, 2), (1, 3), (1, 3), GaloisTag::Tetrahedral),
            ((1, 2), (1, 3), (1, 4), GaloisTag::Octahedral),
            ((1, 2), (1, 3), (1, 5), GaloisTag::Icosahedral),
            ((1, 2), (1, 2), (1, 3), GaloisTag::Dihedral(Finiteness::Undetermined)),
        ];
        for (l, m, n, tag) in cases {
            let p = schwarz(rat(l.0, l.1), rat(m.0, m.1), rat(n.0, n.1));
            assert_eq!(kovacic_classify(&p).unwrap().tag, tag, "{l:?} {m:?} {n:?}");
        }
    }

    #[test]
    fn irrational_exponent_is_reported() {
        assert!(matches!(
            analyze(&structure(&[-4], &[1])),
            Err(Error::AlgebraicExtensionRequired { .. })
        ));
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::testing::{pole_factor, poly, small_rat};
    use crate::algebra::{Poly, Rat};
    use crate::groupoid::LinearODE;

    /// `Σ eᵢ/(x − pᵢ) + c` with distinct rational `pᵢ`.
    fn logarithmic_derivative_like() -> impl Strategy<Value = RatFunc> {
        (
            prop::collection::vec((small_rat(3, 2), small_rat(3, 2)), 1..=2),
            small_rat(2, 1),
        )
            .prop_map(|(terms, c)| {
                let mut seen: Vec<Rat> = Vec::new();
                terms.into_iter().fold(RatFunc::constant(c), |acc, (p, e)| {
                    if seen.contains(&p) {
                        return acc;
                    }
                    seen.push(p.clone());
                    let pole = RatFunc::new(Poly::constant(e), Poly::linear(&p)).unwrap();
                    &acc + &pole
                })
            })
    }

    fn planted(u: &RatFunc) -> ProjectiveStructure {
        ProjectiveStructure::new((&u.derivative() + &(u * u)).scale(&rat(-2, 1))).unwrap()
    }

    fn reducible(tag: GaloisTag) -> bool {
        matches!(
            tag,
            GaloisTag::ProjectivelyTrivial | GaloisTag::TorusFinite | GaloisTag::TorusInfinite | GaloisTag::BorelFull
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn planted_riccati_solution_is_found(u in logarithmic_derivative_like()) {
            let p = planted(&u);
            let analysis = analyze(&p).unwrap();
            let riccati = &analysis.riccati;
            prop_assert_ne!(riccati.count_class, CountClass::None);
            if riccati.count_class != CountClass::Infinite {
                prop_assert!(riccati.solutions.contains(&u));
            }
            prop_assert!(reducible(analysis.class.tag));
            let half = p.curvature().scale(&rat(1, 2));
            for v in &riccati.solutions {
                prop_assert!((&(&v.derivative() + &(v * v)) + &half).is_zero());
            }
        }

        #[test]
        fn first_order_solutions_are_recovered(num in poly(3), (den, _) in pole_factor(2, 3)) {
            prop_assume!(!num.is_zero());
            let f = RatFunc::new(num, den).unwrap();
            let log = f.derivative().checked_div(&f).unwrap();
            let op = LinearODE::new(vec![log.scale(&rat(-1, 1)), RatFunc::one()]).unwrap();
            let Ok(basis) = rational_solutions(&op) else {
                // the logarithmic derivative may have irrational poles
                return Ok(());
            };
            prop_assert_eq!(basis.len(), 1);
            prop_assert!(basis[0].checked_div(&f).unwrap().as_constant().is_some());
        }

        #[test]
        fn riccati_count_matches_galois_class(u in logarithmic_derivative_like(), shift in small_rat(3, 1)) {
            let r = planted(&u).curvature() + &RatFunc::constant(shift);
            let p = ProjectiveStructure::new(r).unwrap();
            let Ok(analysis) = analyze(&p) else {
                return Ok(());
            };
            let tag = analysis.class.tag;
            prop_assert_eq!(analysis.riccati.count_class != CountClass::None, reducible(tag));
            prop_assert_eq!(analysis.sym2_basis.len() == 3, tag == GaloisTag::ProjectivelyTrivial);
            if analysis.riccati.count_class == CountClass::Two {
                prop_assert!(matches!(tag, GaloisTag::TorusFinite | GaloisTag::TorusInfinite));
            }
        }
    }
}
