use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bracket is not a Lie bracket: Jacobi fails on (e{}, e{}, e{})", .0 + 1, .1 + 1, .2 + 1)]
    NotLie(usize, usize, usize),
    #[error("logarithm outside the chart's convergence region: {0}")]
    LogOutOfRange(String),
    #[error("singular matrix")]
    Singular,
    #[error("unresolvable factorization {factorization} for group {group}")]
    Factorization { factorization: String, group: String },
    #[error("splitting failure: factors reproduce the element only to {0:e}")]
    Splitting(f64),
    #[error("extraction inconclusive: {0}")]
    Inconclusive(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
