use thiserror::Error;

/// Errors raised across the library. Variant names match the failure labels
/// used in the module contracts.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("NotDivisible: exact division left a nonzero remainder")]
    NotDivisible,
    #[error("ZeroPolynomial: operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("DegreeTooLow: divided difference needs degree >= 1")]
    DegreeTooLow,
    #[error("DegenerateProjection: resultant vanishes identically")]
    DegenerateProjection,
    #[error("NonTransverseCrossing: projection is not regular near t = {0}")]
    NonTransverseCrossing(f64),
    #[error("CannotCertify: all pairwise projections are degenerate")]
    CannotCertify,
    #[error("WrongStratum: knot is not in the fixed-degree stratum")]
    WrongStratum,
    #[error("UnresolvedCrossing: height fails to separate crossing {0}")]
    UnresolvedCrossing(usize),
    #[error("TooManyCrossings: state sum capped at {max} crossings, got {got}")]
    TooManyCrossings { got: usize, max: usize },
    #[error("InfeasibleRuns: crossing parameters collide, runs cannot be separated")]
    InfeasibleRuns,
    #[error("PatternMismatch: projection has {crossings} crossings, pattern has {pattern}")]
    PatternMismatch { crossings: usize, pattern: usize },
    #[error("NoSolution: system inconsistent (rank {rank}, augmented rank {augmented_rank})")]
    NoSolution { rank: usize, augmented_rank: usize },
    #[error("VerificationFailed: realized diagram does not match the requested pattern")]
    VerificationFailed,
    #[error("WrongShape: expected degrees (4,5) and 5 or 6 crossings")]
    WrongShape,
    #[error("LiftFailed: no certified epsilon above 1e-12")]
    LiftFailed,
    #[error("HypothesisFailed: endpoint data violates the family hypothesis")]
    HypothesisFailed,
    #[error("PathBroken: embedding check failed at sample s = {0}")]
    PathBroken(f64),
    #[error("CorpusCorrupt: corpus data checksum mismatch")]
    CorpusCorrupt,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
