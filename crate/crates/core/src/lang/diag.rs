use std::fmt;

use serde::Serialize;

/// Source position, 1-based. Spans never take part in equality, so ASTs
/// parsed from differently formatted sources compare structurally.
#[derive(Debug, Clone, Copy, Default, Eq, PartialOrd, Ord, Serialize)]
pub struct Span {
    pub line: u32,
    pub col: u32,
    pub len: u32,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Span {
    pub fn new(line: u32, col: u32, len: u32) -> Self {
        Span { line, col, len }
    }

    /// Byte-exact comparison, for when spans themselves are under test.
    pub fn same_position(&self, other: &Span) -> bool {
        (self.line, self.col, self.len) == (other.line, other.col, other.len)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DiagnosticKind {
    // lexing and parsing
    UnexpectedCharacter,
    UnexpectedToken,
    MissingPart,
    PartsOutOfOrder,
    ForwardReference,
    NonIncreasingNumber,
    DuplicateLabel,
    DuplicateObjectName,
    BadArity,
    RepeatedLetter,
    // production
    UnconstructedObject,
    NameCollision,
    DegenerateSegment,
    NotChainEnd,
    CenterNotOnRadius,
    NoCommonRadius,
    SameCircle,
    AmbiguousPlacement,
    UnsatisfiedHypothesis,
    UnverifiedReference,
    SchemaMismatch,
    NotADecomposition,
    // deduction
    OutsideExposition,
    NotARadius,
    PatternMismatch,
    SortMismatch,
    UnjustifiedPremise,
    // structure
    SpecificationMismatch,
    GoalUnreached,
    IllegitimateGeneralization,
    ClosingMismatch,
    PrimitiveDisallowed,
    Io,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Span,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            span,
            message: message.into(),
            expected: None,
        }
    }

    pub fn expecting(mut self, what: impl Into<String>) -> Self {
        self.expected = Some(what.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.kind, self.message)?;
        if let Some(e) = &self.expected {
            write!(f, " (expected {e})")?;
        }
        Ok(())
    }
}
