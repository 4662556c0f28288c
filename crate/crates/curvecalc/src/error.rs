use thiserror::Error;

/// Every failure the library can report. Each variant maps to a stable diagnostic code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("multiplicity must be nonzero")]
    ZeroMultiplicity,
    #[error("orbit `{orbit}`: {k}*theta is an integer (theta = {theta})")]
    EllipticGuardViolated { orbit: String, k: i64, theta: String },
    #[error("orbit `{orbit}`: multiplicity {k} exceeds irrationality horizon {horizon}")]
    HorizonExceeded { orbit: String, k: i64, horizon: i64 },
    #[error("orbit `{0}` is not elliptic")]
    NotElliptic(String),
    #[error("invalid orbit `{orbit}`: {reason}")]
    InvalidOrbit { orbit: String, reason: String },
    #[error("winding profile is empty")]
    EmptyProfile,
    #[error("invalid winding profile: {0}")]
    InvalidProfile(String),
    #[error("end is not holomorphic")]
    NonHolomorphicEnd,
    #[error("end is not embedded (covering sequence ends at {0}, expected 1)")]
    NotEmbeddedEnd(i64),
    #[error("ends do not share an orbit with equal sign: {0}")]
    MismatchedOrbits(String),
    #[error("relative winding list has length {got}; expected {expected}")]
    ProfileLength { got: usize, expected: String },
    #[error("relative winding entry {value} exceeds bound {bound}")]
    ProfileBound { value: i64, bound: i64 },
    #[error("non-integral result: {0}")]
    NonIntegralResult(String),
    #[error("negative asymptotic index {0} for holomorphic data")]
    NegativeIndex(i64),
    #[error("missing witness data: {0}")]
    MissingWitness(String),
    #[error("inconsistent witness: {0}")]
    InconsistentWitness(String),
    #[error("curve `{0}` is not flagged simple")]
    NotSimple(String),
    #[error("curve `{0}` is not connected")]
    NotConnected(String),
    #[error("curve `{0}` has the wrong class for this operation")]
    WrongClass(String),
    #[error("shared orbit is not a simple even orbit or a double cover of an odd hyperbolic orbit")]
    OrbitNotEligible,
    #[error("pair flagged as same direction has vanishing asymptotic index")]
    ProfileContradictsFlag,
    #[error("invalid open book: {0}")]
    InvalidOpenBook(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("invalid matching: {0}")]
    MatchingInvalid(String),
    #[error("truncation order {n} too small for Fourier order {f}")]
    TruncationTooSmall { n: usize, f: usize },
    #[error("vector modulus {0:.3e} below tolerance")]
    VectorTooSmall(f64),
    #[error("winding increment {0:.4} not within rounding guard of an integer")]
    WindingAmbiguous(f64),
    #[error("degenerate operator: eigenvalue {0:.3e} within tolerance of zero")]
    DegenerateOrbit(f64),
    #[error("operator is not symmetric")]
    NonSymmetric,
    #[error("spectral law violated: {0}")]
    LawViolation(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unresolved reference at {pointer}: {name}")]
    Reference { pointer: String, name: String },
    #[error("guard error at {pointer}: {message}")]
    Guard { pointer: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroMultiplicity => "E001",
            Error::EllipticGuardViolated { .. } => "E002",
            Error::HorizonExceeded { .. } => "E003",
            Error::NotElliptic(_) => "E004",
            Error::InvalidOrbit { .. } => "E005",
            Error::EmptyProfile => "E010",
            Error::InvalidProfile(_) => "E011",
            Error::NonHolomorphicEnd => "E012",
            Error::NotEmbeddedEnd(_) => "E013",
            Error::MismatchedOrbits(_) => "E014",
            Error::ProfileLength { .. } => "E015",
            Error::ProfileBound { .. } => "E016",
            Error::NonIntegralResult(_) => "E017",
            Error::NegativeIndex(_) => "E018",
            Error::MissingWitness(_) => "E020",
            Error::InconsistentWitness(_) => "E021",
            Error::NotSimple(_) => "E022",
            Error::NotConnected(_) => "E023",
            Error::WrongClass(_) => "E024",
            Error::OrbitNotEligible => "E025",
            Error::ProfileContradictsFlag => "E026",
            Error::InvalidOpenBook(_) => "E027",
            Error::InconsistentInput(_) => "E028",
            Error::MatchingInvalid(_) => "E029",
            Error::TruncationTooSmall { .. } => "E030",
            Error::VectorTooSmall(_) => "E031",
            Error::WindingAmbiguous(_) => "E032",
            Error::DegenerateOrbit(_) => "E033",
            Error::NonSymmetric => "E034",
            Error::LawViolation(_) => "E035",
            Error::Schema { .. } => "E040",
            Error::Reference { .. } => "E041",
            Error::Guard { .. } => "E042",
            Error::Io(_) => "E043",
        }
    }

    /// True for errors caused by malformed or inconsistent input rather than a violated law.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::LawViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
