use rumin_core::spectrum::SpectrumError;
use rumin_core::torsion::TorsionError;
use rumin_core::zeta::ZetaError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RANGE: u8 = 3;
    pub const POLE: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Range(String),
    #[error("{0}")]
    Pole(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Range(_) => exit::RANGE,
            CliError::Pole(_) => exit::POLE,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => exit::VERIFY_FAILED,
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::DegreeOutOfRange { .. } => CliError::Range(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::Pole { .. } => CliError::Pole(e.to_string()),
            _ => CliError::Range(e.to_string()),
        }
    }
}

impl From<TorsionError> for CliError {
    fn from(e: TorsionError) -> Self {
        match e {
            TorsionError::Pole { .. } | TorsionError::Divergent { .. } => CliError::Pole(e.to_string()),
            TorsionError::InvalidSphere | TorsionError::InvalidTruncation => CliError::Usage(e.to_string()),
            TorsionError::Zeta(z) => z.into(),
            TorsionError::Spectrum(s) => s.into(),
        }
    }
}
