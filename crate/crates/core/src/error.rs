use thiserror::Error;

/// Errors produced by the group, graph, coloring and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element {element:?} does not belong to Z_{moduli:?}")]
    SpecMismatch { element: Vec<u64>, moduli: Vec<u64> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator set contains the identity")]
    IdentityGenerator,
    #[error("generator set is not closed under inverses")]
    NotInverseClosed,
    #[error("generator set does not generate the group")]
    NotGenerating,
    #[error("generator set is not a minimal generating set")]
    NotMinimal,
    #[error("generators are not independent: product of orders {product} != group order {order}")]
    NotIndependent { product: u64, order: u64 },
    #[error("subset enumeration over {got} generator pairs exceeds the cap of {cap}")]
    SubsetCap { got: usize, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: u64 },
    #[error("invalid recursive circulant r={r}, d={d}, m={m}: {reason}")]
    InvalidCirculant { r: u64, d: u64, m: u32, reason: &'static str },
    #[error("path word violates the level bound at level {level}: |{coeff}| > {bound}")]
    WordBounds { level: usize, coeff: i64, bound: u64 },
    #[error("coloring does not match graph: {0}")]
    ColoringMismatch(String),
    #[error("{got} colors exceed the verifier cap of {cap}")]
    ColorCap { got: usize, cap: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
