use thiserror::Error;

use crate::algebra::Label;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two label sets that must coincide do not.
    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    /// Labels that must be disjoint overlap.
    #[error("label collision on {0}")]
    LabelCollision(Label),

    /// A label occurs twice in a list that must be duplicate-free.
    #[error("duplicate label {label} in {place}")]
    DuplicateLabel { label: Label, place: String },

    /// Entry grid does not match the label lists.
    #[error("shape mismatch: expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// Row and column label sets differ where a self-map is required.
    #[error("not an endomorphism: row and column label sets differ")]
    NotEndomorphism,

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    /// Input exceeds the configured brute-force cap.
    #[error("{what} has size {size}, above the limit of {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },

    /// A wire is left unconnected at a gap.
    #[error("dangling wire {label} at gap {gap}")]
    DanglingWire { gap: usize, label: Label },

    /// Wire counts disagree across a gap.
    #[error("size mismatch at gap {gap}: {outgoing} outgoing wires, {incoming} incoming")]
    SizeMismatch { gap: usize, outgoing: usize, incoming: usize },

    /// An edge joins two gates of the same kind.
    #[error("edge {0} joins two gates of the same kind")]
    NotBipartite(usize),

    /// An edge is missing or used more than once per side.
    #[error("edge {edge} appears {states} times among states and {costates} times among costates")]
    EdgeMultiplicity { edge: usize, states: usize, costates: usize },

    #[error("edge endpoint {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
