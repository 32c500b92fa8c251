use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("series coefficient at t^{index} is not an integer")]
    NonIntegralCoefficient { index: usize },
    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("basis element {index} is not a root: self-pairing {self_pairing}, expected -2")]
    NotARoot { index: usize, self_pairing: String },
    #[error("vector is not a root: self-pairing {self_pairing}, expected -2")]
    NotARootVector { self_pairing: String },
    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("root basis is not a permutation of 0..{rank}")]
    InvalidBasis { rank: usize },
    #[error("only genus 0 is supported, got g = {0}")]
    UnsupportedGenus(u64),
    #[error("invalid orbit pair ({alpha}, {beta}): {reason}")]
    InvalidPair { alpha: i64, beta: i64, reason: &'static str },
    #[error("orbit invariants are neither Kleinian nor Fuchsian: {0}")]
    NeitherKind(String),
    #[error("Gorenstein relation violated: {0}")]
    GorensteinViolation(String),
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("negative dimension {value} at degree {k}")]
    NegativeDimension { k: usize, value: i64 },
    #[error("evaluation routes disagree for series {series} at t^{index}")]
    RouteMismatch { series: &'static str, index: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
