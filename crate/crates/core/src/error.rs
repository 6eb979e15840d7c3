use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("matrix is not square ({rows} x {cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("graph is disconnected: vertex {1} is unreachable from vertex {0}")]
    Disconnected(usize, usize),

    #[error("need at least {required} vertices, got {found}")]
    TooFewVertices { required: usize, found: usize },

    #[error("dimension mismatch: expected {expected} vertices, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid distance matrix: {0}")]
    InvalidDistances(String),

    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("degenerate layout: {0}")]
    DegenerateLayout(&'static str),

    #[error("correlation undefined: a series is constant")]
    UndefinedCorrelation,

    #[error("{metric} refuses n = {n} (limit {limit}); pass force to override")]
    SizeGuard {
        metric: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("layout has no row for vertex {0}")]
    MissingVertex(usize),

    #[error("record for graph '{graph}' has no layout source '{source_name}'")]
    MissingSource { graph: String, source_name: String },

    #[error("unknown metric id '{0}'")]
    UnknownMetric(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bad config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
