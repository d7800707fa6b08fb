use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuiverError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vertex {vertex} is not loop-free for m = {m}")]
    LoopVertex { vertex: String, m: usize },
    #[error("vertex index {index} out of range for m = {m}")]
    VertexRange { index: usize, m: usize },
    #[error("zero vector has no root class")]
    ZeroVector,
    #[error("parameter is not generic: {0}")]
    NotGeneric(String),
    #[error("tau . beta = {0} is not zero")]
    Unbalanced(String),
    #[error("dimension vector {0} is not a positive root")]
    NotPositiveRoot(String),
    #[error("reduction did not reach a balanced vector after {steps} steps (last: {last})")]
    ReductionStalled { steps: usize, last: String },
    #[error("classification exceeded {0} reflections")]
    ClassificationCap(usize),
    #[error("solver failed to converge; best residual {best:e}")]
    NoConvergence { best: f64 },
    #[error("gauge element {index} is singular (condition number {cond:e})")]
    SingularGauge { index: usize, cond: f64 },
    #[error("reflection at vertex {vertex}: {reason}")]
    Reflection { vertex: usize, reason: String },
    #[error("invariant index ({i},{j},{k}) outside the admissible box")]
    IndexOutOfBox { i: usize, j: usize, k: usize },
    #[error("settings differ: {0}")]
    SettingMismatch(String),
    #[error("generator index k must be at least 1 (got {0})")]
    GeneratorIndex(usize),
    #[error("degree cap {cap} is below the required {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("path error: {0}")]
    Path(String),
    #[error("degenerate denominator: {0}")]
    Denominator(String),
    #[error("file format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, QuiverError>;
