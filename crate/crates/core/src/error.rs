use thiserror::Error;

/// Errors raised by the arithmetic layers, the oracle and the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes at L = {q}")]
    PoleAtQ { q: u64 },
    #[error("value does not lie in the quadratic subfield Q(g) for p = {p}")]
    NotInSubfield { p: u64 },
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("insufficient precision: need {needed} p-adic digits, have {have}")]
    Precision { needed: i64, have: i64 },
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("element does not lie in the lattice {0}")]
    NonMember(&'static str),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("transform is not constant on orbit {0}")]
    NonConstantOrbit(String),
    #[error("tail term does not vanish at lambda = {lambda}")]
    TailNonvanishing { lambda: i64 },
    #[error("count window not closed: nonzero count at lambda = {lambda}")]
    WindowNotClosed { lambda: i64 },
    #[error("count is not an integer: {0}")]
    NonIntegral(String),
    #[error("cell outside oracle scope: {0}")]
    Scope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
