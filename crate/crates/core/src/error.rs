use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree m = {0} outside supported range 2..=10")]
    FieldDegree(u32),
    #[error("minimal polynomial index j = {j} outside 1..={max}")]
    MinimalPolyIndex { j: usize, max: usize },
    #[error("lcm of an empty polynomial list")]
    EmptyLcm,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid code parameters: {0}")]
    CodeParams(String),
    #[error("unknown code id {0:?}; expected BCH(n,k) or PRM(n,k)")]
    CodeId(String),

    #[error("parity matrix column {0} is all zero")]
    EmptyColumn(usize),
    #[error("parity matrix has no rows or no columns")]
    EmptyMatrix,

    #[error("weight bank shape mismatch: {0}")]
    Shape(String),
    #[error("list size {ell} outside 1..={max}")]
    ListSize { ell: usize, max: usize },

    #[error("training diverged at step {step}: loss is {loss}")]
    Diverged { step: usize, loss: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("weight file {path}: {msg}")]
    WeightFile { path: PathBuf, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for configuration problems, 3 for data problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::FieldDegree(_)
            | Error::MinimalPolyIndex { .. }
            | Error::CodeParams(_)
            | Error::CodeId(_)
            | Error::ListSize { .. }
            | Error::Config(_) => 2,
            _ => 3,
        }
    }
}
