use alloc::string::String;

/// Every failure the library reports. The `Display` form starts with the
/// variant name so command-line diagnostics can be matched on it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("MalformedInput: {0}")]
    MalformedInput(String),
    #[error("NonPlanar: {0}")]
    NonPlanar(String),
    #[error("BadLabeling: {0}")]
    BadLabeling(String),
    #[error("EmptyDiagram: a PD code needs at least one crossing (use the builtin 'unknot')")]
    EmptyDiagram,
    #[error("UnknownKnot: no builtin knot named '{0}'")]
    UnknownKnot(String),
    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NotPlanarEmbedding: {0}")]
    NotPlanarEmbedding(String),
    #[error("Disconnected: graph has {0} connected components")]
    Disconnected(usize),
    #[error("NotNormalizable: {0}")]
    NotNormalizable(String),
    #[error("FaceNotAdjacent: face {0} shares no diagram edge with the unbounded face")]
    FaceNotAdjacent(usize),
    #[error("FaceUnbounded: face {0} is the unbounded face")]
    FaceUnbounded(usize),
    #[error("FaceOutOfRange: diagram has no face {0}")]
    FaceOutOfRange(usize),
    #[error("KasteleynCheckFailed: {0}")]
    KasteleynCheckFailed(String),
    #[error("InvalidColoring: {0}")]
    InvalidColoring(String),
    #[error("InvalidRepresentation: {0}")]
    InvalidRepresentation(String),
    #[error("NotSingleCrossing: {0}")]
    NotSingleCrossing(String),
    #[error("RewriteCheckFailed: {0}")]
    RewriteCheckFailed(String),
}
