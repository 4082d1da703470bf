//! Proptest strategies for jet expressions and frame vector fields.

use proptest::prelude::*;

use super::{FrameVectorField, JetExpr, JetSymbol};
use crate::algebra::testing::small_rat;

fn symbol() -> impl Strategy<Value = JetSymbol> {
    prop_oneof![
        (0..=3u8).prop_map(JetSymbol::Frame),
        (0..=2u8).prop_map(|i| JetSymbol::Letter('a', i)),
        (0..=1u8).prop_map(|i| JetSymbol::Letter('R', i)),
        Just(JetSymbol::Anchored('R', 0)),
    ]
}

fn frame_or_letter(order: u8) -> impl Strategy<Value = JetSymbol> {
    prop_oneof![
        (0..=order).prop_map(JetSymbol::Frame),
        (0..=1u8).prop_map(|i| JetSymbol::Letter('a', i)),
    ]
}

fn sum_of_terms(symbols: BoxedStrategy<JetSymbol>, terms: usize) -> impl Strategy<Value = JetExpr> {
    prop::collection::vec((small_rat(4, 3), prop::collection::vec(symbols, 0..=2)), 1..=terms).prop_map(|ts| {
        ts.into_iter().fold(JetExpr::zero(), |acc, (c, syms)| {
            let t = syms
                .into_iter()
                .fold(JetExpr::constant(c), |t, s| &t * &JetExpr::symbol(s));
            &acc + &t
        })
    })
}

/// Polynomial in frame coordinates and jets of `a`, `R`.
pub fn poly_expr() -> impl Strategy<Value = JetExpr> {
    sum_of_terms(symbol().boxed(), 3)
}

/// Sum of at most two single-symbol terms plus a constant.
pub fn divisor() -> impl Strategy<Value = JetExpr> {
    (
        small_rat(3, 2),
        prop::collection::vec((small_rat(3, 2), frame_or_letter(2)), 1..=2),
    )
        .prop_map(|(c, ts)| {
            ts.into_iter()
                .fold(JetExpr::constant(c), |acc, (k, s)| &acc + &JetExpr::symbol(s).scale(&k))
        })
        .prop_filter("nonzero", |e| !e.is_zero())
}

/// Polynomial expression over a monomial in `λ_ε, λ_εε`.
pub fn expr() -> impl Strategy<Value = JetExpr> {
    (poly_expr(), 0..=2i32, 0..=1i32).prop_map(|(n, i, j)| {
        let den = &JetExpr::frame(1).pow(i) * &JetExpr::frame(2).pow(j);
        n.checked_div(&den).expect("nonzero denominator")
    })
}

/// Order-2 field with polynomial coefficients in `λ, λ_ε, λ_εε` and `a, a_λ`.
pub fn field2() -> impl Strategy<Value = FrameVectorField> {
    prop::collection::vec(sum_of_terms(frame_or_letter(2).boxed(), 2), 3)
        .prop_map(|cs| FrameVectorField::new(2, cs).expect("order-2 coefficients"))
}
