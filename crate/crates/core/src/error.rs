use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not unitary within tolerance {tol:e} (residual {residual:e})")]
    NotUnitary { residual: f64, tol: f64 },
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
