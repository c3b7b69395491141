use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed simplex {0:?}: vertices must be 1 to 4 distinct labels")]
    MalformedSimplex(Vec<u32>),

    #[error("dimension {got} out of range (expected {expected})")]
    Dimension { got: usize, expected: &'static str },

    #[error("complex is not pure 3-dimensional: {0}")]
    NotPure(String),

    #[error("not a closed surface: edge {edge:?} has {count} incident triangles")]
    NotClosedSurface { edge: Vec<u32>, count: usize },

    #[error("not a subcomplex: simplex {0:?} is missing from the ambient complex")]
    NotSubcomplex(Vec<u32>),

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("complex has empty boundary, not a domain")]
    NotADomain,

    #[error("boundary component {0} is not orientable")]
    NonOrientableBoundary(usize),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown marked subcomplex `{0}`")]
    UnknownMarked(String),

    #[error("lattice path {index}: {reason}")]
    LatticePath { index: usize, reason: String },

    #[error("lattice paths {0} and {1} collide")]
    Collision(usize, usize),

    #[error("invalid surface system: {}", .0.join("; "))]
    InvalidSurfaceSystem(Vec<String>),

    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("component index {index} out of range for {count} components")]
    ComponentIndex { index: usize, count: usize },

    #[error("Magnus truncation degree {0} is too small (need at least 2)")]
    TruncationDegree(usize),

    #[error("invalid Milnor index sequence: {0}")]
    MilnorIndices(String),

    #[error("arc rewriting did not stabilise within {0} sweeps")]
    DepthExceeded(usize),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Internal-consistency failures signal a bug or a violated theorem,
    /// as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
