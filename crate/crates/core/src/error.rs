use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("relator {0} is trivial after free reduction")]
    EmptyRelator(usize),

    #[error("cannot parse `{0}`")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ball enumeration exceeded cap of {cap} elements at radius {radius_reached} (frontier {frontier})")]
    BallOverflow {
        cap: usize,
        radius_reached: usize,
        frontier: usize,
    },

    #[error("filling may need {estimate} cells at N = {n}, cap is {cap}")]
    CellCap { estimate: usize, cap: usize, n: usize },

    #[error("distance is not exactly computable in oracle `{0}`")]
    InexactOracle(String),

    #[error("diagram: {0}")]
    Diagram(String),

    #[error("embedding: {0}")]
    Embedding(String),

    #[error("filling [{stage}]: {message}")]
    Filling { stage: &'static str, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn filling(stage: &'static str, message: impl Into<String>) -> Self {
        Error::Filling {
            stage,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
