//! Exact symbolic toolkit for the Kummer groupoid of a projective structure
//! `S(τ) = R(λ)` on the line: rational-function algebra, jet calculus,
//! groupoid invariants, differential Galois analysis of `ψ″ + ½Rψ = 0` and a
//! verdict engine that classifies `R` with self-verifying witnesses.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod galois;
pub mod groupoid;
pub mod jet;

pub use algebra::{Poly, Rat, RatFunc};
pub use classify::{classify, classify_text, render_report, verify_identities, ClassificationReport, Format, Verdict};
pub use error::{Error, Result};
pub use groupoid::{AffineStructure, LinearODE, ProjectiveStructure};
pub use jet::{DiffeoJet3, FrameVectorField, Jet3, JetExpr, JetSymbol};
