use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (bad point count, bad flags, bad JSON shape).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The point set failed an extremality or tolerance check.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    /// The ball polyhedron combinatorics did not come out as expected.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("numeric domain error: {0}")]
    Domain(String),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("mesh error: {message} ({} offending edges)", edges.len())]
    Mesh {
        message: String,
        edges: Vec<(u32, u32)>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidInput(_) | Error::Validation(_) | Error::Json(_) => 2,
            Error::Degenerate(_) | Error::Structure(_) | Error::Mesh { .. } => 3,
            Error::Domain(_) | Error::Range(_) => 4,
            Error::Io(_) => 5,
        }
    }

    /// Short machine-readable tag for error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Validation(_) => "validation",
            Error::Degenerate(_) => "degenerate",
            Error::Structure(_) => "structure",
            Error::Domain(_) => "domain",
            Error::Range(_) => "range",
            Error::Mesh { .. } => "mesh",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
