use crate::rational::Rat;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("indices must satisfy 1 <= i < j <= {dim}, got [{i},{j}]")]
    BadSlotPair { i: usize, j: usize, dim: usize },
    #[error("target index {k} is out of range 1..={dim}")]
    BadTarget { k: usize, dim: usize },
    #[error("duplicate slot [{0},{1}] -> {2}")]
    DuplicateSlot(usize, usize, usize),
    #[error("law uses parameter '{0}'; bind a value for it first")]
    SymbolicLaw(String),
    #[error("law has no parameter named '{0}'")]
    UnknownParameter(String),
    #[error("not a Lie algebra: Jacobi identity fails at {count} triple(s), first at ({i},{j},{k})")]
    JacobiFailed { count: usize, i: usize, j: usize, k: usize },
    #[error("not nilpotent: the series stabilizes at dimension {0} > 0")]
    NotNilpotent(usize),
    #[error("operation rejects the zero law: {0}")]
    ZeroLaw(&'static str),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("inconsistent linear system (left-kernel certificate attached)")]
    Inconsistent { certificate: Vec<Rat> },
    #[error("diagonal rank is 0; no pre-Einstein derivation can be computed from diagonal data")]
    RankZero,
    #[error("pre-Einstein trace system is singular; the basis is probably not torus-adapted")]
    SingularTraceSystem,
    #[error("diagonal torus is not maximal: tr(phi*D) != tr(D) for derivation basis element {index}")]
    TorusNotMaximal { index: usize },
    #[error("eigenvalue type is proportional to the identity; Min value undefined")]
    DegenerateType,
    #[error("eigenvalue type has a non-positive entry")]
    NonPositiveType,
    #[error("diagonal vector admits no graded slots")]
    NoGradedSlots,
    #[error("law is not written in a nice basis")]
    NotNice,
    #[error("numeric Jacobi residual {0:.3e} exceeds the tolerance")]
    NumericJacobi(f64),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("coefficient '{0}' is not representable in the file grammar")]
    Unrepresentable(String),
    #[error("invalid degeneration certificate: {0}")]
    BadCertificate(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
