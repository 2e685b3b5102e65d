use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate: shape and domain violations,
/// failed numerical validation, and grid configuration problems.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols})")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("{op}: expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    WrongShape {
        op: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:.6e})")]
    NotPositive(f64),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("axis vector must have unit length (got norm {0})")]
    BadAxis(f64),

    #[error("{name} = {value} lies outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("numerical failure in {context} (value {value:.6e})")]
    Numeric { context: &'static str, value: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid point ({row}, {col}): {source}")]
    AtGridPoint {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("worker pool: {0}")]
    ThreadPool(String),
}
