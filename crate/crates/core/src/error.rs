use thiserror::Error;

/// Errors raised by the symbolic kernel and the geometric layers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate variable `{0}` in chart")]
    DuplicateVariable(String),
    #[error("operation requires a rational expression, found numeric-only `{0}`")]
    UnsupportedClass(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unbound variable `{0}` during evaluation")]
    UnboundVariable(String),
    #[error("evaluation domain error: {0}")]
    EvaluationDomain(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("form degree {got} invalid here: {reason}")]
    Degree { got: usize, reason: String },
    #[error("component count {got} does not match chart dimension {expected}")]
    ComponentCount { expected: usize, got: usize },
    #[error("field is not projectable: base component {0} depends on fiber or jet variables")]
    NonProjectable(usize),
    #[error("generalized vector field of order > 1: component {0} contains second-jet variables")]
    OrderExceeded(usize),
    #[error("expression depends on variables outside the base chart: {0}")]
    FiberDependent(String),
    #[error("prolongation bracket left second-jet variables in component {component}: {expr}")]
    ResidualSecondJet { component: usize, expr: String },
    #[error("vector field is not divergence free: div = {0}")]
    NotDivergenceFree(String),
    #[error("volume form coefficient vanishes identically")]
    DegenerateVolume,
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
