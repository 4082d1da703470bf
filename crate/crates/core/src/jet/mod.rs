//! Symbolic calculus on the frame bundle of the line up to order three:
//! jet expressions, total derivatives, prolongations, brackets and
//! third-order composition of jets.

mod compose;
mod expr;
mod field;
pub mod mpoly;
mod symbol;
#[cfg(test)]
pub(crate) mod testing;

pub use compose::{faa_di_bruno, DiffeoJet3, Jet3, JetScalar};
pub use expr::{lam, JetExpr};
pub use field::{prolong, schwarzian_frame, FrameVectorField, MAX_JET_ORDER};
pub use symbol::JetSymbol;
