use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("points must have at least one coordinate")]
    ZeroDimension,
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("polyline has no vertices")]
    Empty,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid params: {0}")]
    BadParams(String),
    #[error("invalid parameter interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("endpoints do not meet (gap {gap})")]
    EndpointMismatch { gap: f64 },
    #[error("invalid tolerance {0}")]
    BadTolerance(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("missing geometry for {0}")]
    MissingGeometry(String),
    #[error("edge {edge} does not meet its endpoint image (gap {gap})")]
    EdgeEndpointMismatch { edge: String, gap: f64 },
    #[error("isomorphism enumeration exceeded cap of {cap} candidate maps")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrechetError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no monotone path through free space at epsilon {0}")]
    NotReachable(f64),
    #[error("unknown distance engine {0:?}")]
    UnknownEngine(String),
    #[error("engine {engine} does not accept {input} inputs")]
    WrongInput { engine: String, input: &'static str },
}
