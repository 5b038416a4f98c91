use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("target number must be an integer >= 2 (got `{0}`)")]
    InvalidTargetNumber(String),
    #[error("trial factor must be >= 1")]
    InvalidTrialFactor,
    #[error("damping rate must be finite and >= 0 (got {0})")]
    InvalidDamping(f64),
    #[error("polarization must lie in (0, 0.5) (got {0})")]
    InvalidPolarization(f64),
    #[error("pulse timing must be positive and finite")]
    InvalidTiming,
    #[error("schedule needs exactly {need} phases for m_max = {m_max} (got {got})")]
    MalformedSchedule { m_max: u32, need: usize, got: usize },
    #[error("initial state carries no transverse polarization")]
    NoTransversePolarization,
    #[error("phase index {index} out of range for {len} phases")]
    PhaseIndexOutOfRange { index: usize, len: usize },
    #[error("mixed phase denominators {0} and {1} in one schedule")]
    MixedPhaseDenominators(u64, u64),
    #[error("pattern must cover l = 1..={needed} (got {got} records)")]
    IncompletePattern { needed: u64, got: usize },
    #[error("threshold must lie in (0, 1) (got {0})")]
    InvalidThreshold(f64),
    #[error("contrast curve needs m_max >= 1 (got {0})")]
    InvalidContrastTruncation(u32),
    #[error("scan window [{lo}, {hi}] must lie within [1, N-1]")]
    WindowOutOfRange { lo: String, hi: String },
    #[error("scan bound n0 = {n0} does not fit the addressable range")]
    ScanBoundOverflow { n0: String },
    #[error("full scan up to n0 = {n0} exceeds the limit of {limit}; rerun with --force to insist")]
    RefusedScan { n0: u64, limit: u64 },
    #[error("unknown verification suite `{0}` (expected equivalence, refocusing, telescoping or damping)")]
    UnknownSuite(String),
    #[error("verification suite `{0}` failed")]
    VerificationFailed(String),
    #[error("GAUSSFACTOR_THREADS must be a positive integer (got `{0}`)")]
    InvalidThreadCount(String),
    #[error("could not build scan thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 2 for validation errors, 3 for refused scans,
    /// 4 for a failed verification suite, 1 for I/O trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::RefusedScan { .. } => 3,
            Error::VerificationFailed(_) => 4,
            Error::Io(_) | Error::ThreadPool(_) => 1,
            _ => 2,
        }
    }
}
