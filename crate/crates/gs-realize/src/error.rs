use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GsError {
    #[error("inadmissible nature `{nature}` for singularity type `{ty}`")]
    InadmissibleNature { ty: String, nature: String },
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("vertex {0} has no incident edges (degree 0 semi-graph)")]
    DegreeZero(u32),
    #[error("graph is not closed: edge {0} has an open endpoint")]
    NotClosed(usize),
    #[error("graph is structurally invalid: {0}")]
    InvalidGraph(String),
    #[error("weight {weight} exceeds the enumeration bound {bound}")]
    BoundExceeded { weight: u32, bound: u32 },
    #[error("weight must be at least 1")]
    ZeroWeight,
    #[error("arc positions coincide")]
    PositionsCoincide,
    #[error("invalid arc position: {0}")]
    InvalidPosition(String),
    #[error("branch point {0} is not a vertex of the component")]
    NotABranchPoint(u32),
    #[error("weight {0} is not a minimal boundary weight (expected 1, 2, 3, 5 or 7)")]
    NotMinimalWeight(u32),
    #[error("shape ({label}, e+={e_plus}, e-={e_minus}) is absent from the shape catalog")]
    ShapeAbsent { label: String, e_plus: usize, e_minus: usize },
    #[error("malformed branched manifold encoding `{0}`")]
    BadEncoding(String),
    #[error("certificate is missing an assignment for edge {0}")]
    MissingAssignment(usize),
}

pub type Result<T> = std::result::Result<T, GsError>;
