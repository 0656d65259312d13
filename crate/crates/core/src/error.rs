use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid basis change: {0}")]
    InvalidBasisChange(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("element is not in the augmentation kernel (augmentation = {0})")]
    NotInKernel(i64),

    #[error("unsupported degree {0}: complete contraction is implemented in degree 2 only")]
    UnsupportedDegree(usize),

    #[error("unsupported clasper shape: {0}")]
    UnsupportedShape(String),

    #[error("band index {band} out of range for a genus {genus} surface")]
    BandOutOfRange { band: usize, genus: usize },

    #[error("malformed clasper: {0}")]
    MalformedClasper(String),

    #[error("integer overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
