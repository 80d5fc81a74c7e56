use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Core(#[from] grascurve_core::Error),
}

impl CliError {
    /// Stable machine-readable tag for the error object.
    pub fn kind(&self) -> &'static str {
        use grascurve_core::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Io { .. } => "io",
            CliError::UnknownCheck(_) => "unknown-check",
            CliError::Core(e) => match e {
                E::Parse(_) | E::InvalidInput(_) | E::DimensionMismatch(_) | E::WrongDimension { .. } => "input",
                E::NotPrime(_) | E::BadReduction(_) => "input",
                E::NotDecomposable => "not-decomposable",
                E::DegenerateFamily(_) | E::NotLocallyFree | E::DegenerateConic(_) => "degenerate",
                E::OutOfScopeDegree(_) | E::WrongDegree { .. } | E::DegreeMismatch { .. } => "degree",
                E::NotInSection => "not-in-section",
                E::NonGenericEnvelope => "non-generic",
                E::UnstableInterpolation(_) => "unstable-interpolation",
                E::BudgetExceeded { .. } => "budget-exceeded",
                E::FieldMismatch | E::EmptyMatrix => "internal",
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
