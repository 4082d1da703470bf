use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the pipeline can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// The denominator keeps a factor without rational roots.
    #[error("unsupported poles: factor {factor} of degree {degree} has no rational roots")]
    UnsupportedPoles { factor: String, degree: usize },

    /// Kovacic data only exists over a proper algebraic extension of the rationals.
    #[error("algebraic extension required: {reason}")]
    AlgebraicExtensionRequired { reason: String },

    #[error("evaluation at a pole: {at}")]
    Pole { at: String },

    #[error("the zero function has no order at infinity")]
    ZeroFunction,

    #[error("jet order {order} is out of range (0..={max})")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("vector field orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("degenerate jet: first derivative vanishes")]
    DegenerateJet,

    #[error("jets are not composable: inner target {inner_target} differs from outer source {outer_source}")]
    SourceMismatch { inner_target: String, outer_source: String },

    #[error("symbol {0} has no assigned value")]
    Unbound(String),

    #[error("coefficient uses {symbol}, which is above the field order {order}")]
    SymbolAboveOrder { symbol: String, order: usize },

    #[error("point {at} is singular for the operator")]
    SingularPoint { at: String },

    #[error("operator is not monic")]
    NotMonic,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("expression uses more than one variable: {first} and {second}")]
    MultipleVariables { first: String, second: String },

    #[error("internal verification failed: {0}")]
    Verification(String),
}
