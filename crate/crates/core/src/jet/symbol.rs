use std::fmt;

/// Indeterminates of the order-3 frame calculus on the line.
///
/// The derived ordering (frame coordinates, then letters, then anchored
/// letters; ascending derivative order inside each kind) fixes the monomial
/// order used by [`super::JetExpr`] canonical forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetSymbol {
    /// `λ^(j)`: `λ`, `λ_ε`, `λ_εε`, `λ_εεε`, ...
    Frame(u8),
    /// `i`-th `λ`-derivative of a function of `λ` named by the letter.
    Letter(char, u8),
    /// `i`-th derivative of a letter evaluated at the base point `λ₀`; a constant.
    Anchored(char, u8),
}

impl JetSymbol {
    pub const LAMBDA: JetSymbol = JetSymbol::Frame(0);

    /// Jet order carried by a frame coordinate; letters report `None`.
    pub fn frame_order(self) -> Option<usize> {
        match self {
            JetSymbol::Frame(j) => Some(j as usize),
            _ => None,
        }
    }
}

impl fmt::Display for JetSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            JetSymbol::Frame(0) => f.write_str("λ"),
            JetSymbol::Frame(j) => write!(f, "λ_{}", "ε".repeat(j as usize)),
            JetSymbol::Letter(c, 0) => write!(f, "{c}"),
            JetSymbol::Letter(c, i) => write!(f, "{c}_{}", "λ".repeat(i as usize)),
            JetSymbol::Anchored(c, 0) => write!(f, "{c}(λ₀)"),
            JetSymbol::Anchored(c, i) => write!(f, "{c}_{}(λ₀)", "λ".repeat(i as usize)),
        }
    }
}
