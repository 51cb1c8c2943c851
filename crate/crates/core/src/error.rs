use thiserror::Error;

/// Errors raised by the arithmetic engine and the identity checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("wrong relation for the parity of ({i}, {j}); use the {expected} variant")]
    WrongRelation {
        i: usize,
        j: usize,
        expected: &'static str,
    },
    #[error("bad determinant spec: {0}")]
    BadSpec(String),
    #[error("wrong variant: {0}")]
    WrongVariant(String),
    #[error("bad index set: {0}")]
    BadIndexSet(String),
    #[error("invalid shift base t = {0}: t must avoid 0, 1 and -1")]
    InvalidShiftBase(String),
    #[error("inconsistent linear system at order {order}")]
    ReductionInconsistent { order: usize },
    #[error("underdetermined linear system at order {order}: {free} free parameter(s)")]
    UnderdeterminedOrder { order: usize, free: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
