use crate::partitions::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("partition {partition} has length {len} > number of variables {n_vars}")]
    TooManyParts { partition: Partition, len: usize, n_vars: usize },

    #[error("degree {degree} or variable count {n_vars} exceeds the configured cap ({max_degree}, {max_vars})")]
    SizeCap { degree: usize, n_vars: usize, max_degree: usize, max_vars: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid chamber point: {0}")]
    InvalidPoint(String),

    #[error("Pochhammer pole: {0}")]
    Pole(String),

    #[error("zero eigenvalue gap between {upper} and {lower} in the Jack recursion")]
    DegenerateRecursion { upper: Partition, lower: Partition },

    #[error("quadrature did not converge: estimated error {estimate:e} above {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
