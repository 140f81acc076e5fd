use thiserror::Error;

use crate::lang::diag::DiagnosticKind;
use crate::naming::NameError;

/// Failures of production and deduction operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Name(#[from] NameError),
    #[error("{0} is already declared")]
    DuplicateObjectName(String),
    #[error("point {0} has not been constructed")]
    UnknownPoint(char),
    #[error("segment {0} has not been constructed")]
    UnknownSegment(String),
    #[error("{0} has not been constructed")]
    UnknownObject(String),
    #[error("no circle labelled {0}")]
    UnknownCircle(String),
    #[error("circle label {0} is already in use")]
    DuplicateCircle(String),
    #[error("a segment needs two different endpoints, got {0}{0}")]
    DegenerateSegment(char),
    #[error("letter {0} already names a point")]
    NameCollision(char),
    #[error("{point} is not an end of the line through {segment}")]
    NotChainEnd { segment: String, point: char },
    #[error("center {center} is not an endpoint of radius {radius}")]
    CenterNotOnRadius { center: char, radius: String },
    #[error("circles {0} and {1} do not share a radius")]
    NoCommonRadius(String, String),
    #[error("cannot intersect circle {0} with itself")]
    SameCircle(String),
    #[error("position of {point} on {segment} is not determined by the facts at hand")]
    AmbiguousPlacement { point: char, segment: String },
    #[error("unsatisfied hypothesis: {0}")]
    UnsatisfiedHypothesis(String),
    #[error("proposition {0} is not available as a verified or primitive result")]
    UnverifiedReference(String),
    #[error("arguments do not fit the schema: {0}")]
    SchemaMismatch(String),
    #[error("{0} is not a decomposition and must be proved, not posited")]
    NotADecomposition(String),
    #[error("hypotheses may only be asserted in the exposition")]
    OutsideExposition,
    #[error("{segment} is not a radius of circle {circle}")]
    NotARadius { segment: String, circle: String },
    #[error("{0} has not been constructed")]
    UnconstructedObject(String),
    #[error("premises do not fit the rule: {0}")]
    PatternMismatch(String),
    #[error("magnitudes of different sorts: {0}")]
    SortMismatch(String),
    #[error("no fact #{0}")]
    UnknownFact(usize),
}

impl KernelError {
    pub fn diagnostic_kind(&self) -> DiagnosticKind {
        use DiagnosticKind as D;
        match self {
            KernelError::Name(NameError::RepeatedLetter { .. }) => D::RepeatedLetter,
            KernelError::Name(_) => D::BadArity,
            KernelError::DuplicateObjectName(_) => D::DuplicateObjectName,
            KernelError::UnknownPoint(_)
            | KernelError::UnknownSegment(_)
            | KernelError::UnknownObject(_)
            | KernelError::UnknownCircle(_)
            | KernelError::UnconstructedObject(_) => D::UnconstructedObject,
            KernelError::DuplicateCircle(_) | KernelError::NameCollision(_) => D::NameCollision,
            KernelError::DegenerateSegment(_) => D::DegenerateSegment,
            KernelError::NotChainEnd { .. } => D::NotChainEnd,
            KernelError::CenterNotOnRadius { .. } => D::CenterNotOnRadius,
            KernelError::NoCommonRadius(..) => D::NoCommonRadius,
            KernelError::SameCircle(_) => D::SameCircle,
            KernelError::AmbiguousPlacement { .. } => D::AmbiguousPlacement,
            KernelError::UnsatisfiedHypothesis(_) => D::UnsatisfiedHypothesis,
            KernelError::UnverifiedReference(_) => D::UnverifiedReference,
            KernelError::SchemaMismatch(_) => D::SchemaMismatch,
            KernelError::NotADecomposition(_) => D::NotADecomposition,
            KernelError::OutsideExposition => D::OutsideExposition,
            KernelError::NotARadius { .. } => D::NotARadius,
            KernelError::PatternMismatch(_) => D::PatternMismatch,
            KernelError::SortMismatch(_) => D::SortMismatch,
            KernelError::UnknownFact(_) => D::UnjustifiedPremise,
        }
    }
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;
