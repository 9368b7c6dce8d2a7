use exparabolas::GeometryError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("iteration cap reached: {0}")]
    Cap(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Cap(_) => 4,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::DegenerateTriangle { .. }
            | GeometryError::InvalidSides { .. }
            | GeometryError::NonFinite
            | GeometryError::ZeroTriple
            | GeometryError::PointAtInfinity
            | GeometryError::InvalidParameter { .. }
            | GeometryError::NotAdmissible(..) => CliError::Input(e.to_string()),
            GeometryError::IterationCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
}
