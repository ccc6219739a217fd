use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma index {0} out of range 0..=4")]
    GammaIndex(usize),
    #[error("point is off the hyperboloid: |eta(x,x) + 1| = {residual:e}")]
    OffHyperboloid { residual: f64 },
    #[error("matrix is not an embedded point: roundtrip residual {residual:e}")]
    NotAPoint { residual: f64 },
    #[error("matrix is not in Sp(1,1): |g* g0 g - g0| = {residual:e}")]
    NotInSpinGroup { residual: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid two-point operator: {0}")]
    InvalidTwoPoint(String),
    #[error("regulator must be positive, got {0}")]
    Regulator(f64),
    #[error("model has no {0}")]
    MissingSymmetry(&'static str),
    #[error("operator is not gauge invariant: residual {0:e}")]
    NotGaugeInvariant(f64),
    #[error("unsupported wedge tag: {0}")]
    UnsupportedWedge(String),
}
