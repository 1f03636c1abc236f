use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("torus dimension mismatch: {left} vs {right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("cannot combine a vector-side element with a covector-side element")]
    SideMismatch,
    #[error("degree overflow: {left} + {right} exceeds torus dimension {n}")]
    DegreeOverflow { left: usize, right: usize, n: usize },
    #[error("cannot contract a scalar")]
    ContractScalar,
    #[error("invalid torus dimension {0}; need n >= 1")]
    InvalidDimension(usize),
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },
    #[error("matrix is not invertible over the integers (determinant {det})")]
    NotUnimodular { det: String },
    #[error("matrix is not unipotent: (T - I)^{power} is nonzero")]
    NotUnipotent { power: usize },
    #[error("matrix is not nilpotent: N^{power} is nonzero")]
    NotNilpotent { power: usize },
    #[error("nilpotency order {order} exceeds the bound allowed by center {center} (need N^(center+1) = 0)")]
    CenterTooSmall { order: usize, center: usize },
    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("weight a_{index} = {value} is not positive")]
    NonPositiveWeight { index: usize, value: String },
    #[error("normalization violated: pairing(alpha0, beta0) = {value}, expected 1")]
    Normalization { value: String },
    #[error("result is not proportional to beta0; residual {residual:?}")]
    NotProportional { residual: Vec<String> },
    #[error("class is not in filtration level F_{level}")]
    NotInFiltration { level: usize },
    #[error("spanning set for the translation action is degenerate")]
    DegenerateSpan,
    #[error("translation action is inconsistent on the class sigma_{alpha:?}")]
    InconsistentAction { alpha: Vec<String> },
    #[error("point lies on the deleted hypersurface 1 + z_1...z_n = 0")]
    OffDomain,
    #[error("zero-product ray: fiber point has a vanishing coordinate, choose l-stratum sampler")]
    ZeroProductRay,
    #[error("radius system infeasible: {constraint}")]
    Infeasible { constraint: String },
    #[error("bad branch indices (i={i}, j={j}) for n={n}; need 1 <= i < j <= n")]
    BadIndices { n: usize, i: usize, j: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}
