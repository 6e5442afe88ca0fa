use thiserror::Error;

/// Errors raised by the computational kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("invalid ellipsoid: {0}")]
    InvalidEllipsoid(String),
    #[error("unknown ellipsoid preset `{0}`")]
    UnknownEllipsoid(String),
    #[error("latitude {0} rad is at or beyond the pole")]
    PoleDomain(f64),
    #[error("Wallis integral needs an even order, got {0}")]
    OddWallisOrder(u32),
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("longitude is undefined on the polar axis")]
    UndefinedLongitude,
    #[error("fixed-point map is not contracting (k = {0})")]
    NotContracting(f64),
    #[error("iteration diverged after {iterations} steps (last delta {last_delta:e})")]
    NonContracting { iterations: u32, last_delta: f64 },
    #[error("no convergence after {0} iterations")]
    NoConvergence(u32),
    #[error("no admissible foot point: point lies too deep inside the ellipsoid")]
    NoAdmissibleRoot,
    #[error("singular parameterization at ({0}, {1})")]
    SingularParameterization(f64, f64),
    #[error("principal normal undefined: curvature vanishes")]
    UndefinedNormal,
    #[error("spherical triangle cannot be solved: {0}")]
    UnsolvableTriangle(String),
    #[error("no regular spherical square with vertex angle {0} rad")]
    NoSuchSquare(f64),
    #[error("inverse transform is singular here")]
    SingularInverse,
    #[error("star is circumpolar: it {0}")]
    Circumpolar(Circumpolar),
    #[error("azimuth undefined at the zenith")]
    UndefinedAzimuth,
    #[error("shadow length is infinite (zenith distance >= 90 deg)")]
    InfiniteShadow,
    #[error("inconsistent observation: {0}")]
    InconsistentObservation(String),
    #[error("eccentricity {0} outside [0, 1)")]
    Eccentricity(f64),
    #[error("radius {0} m outside the apsidal band")]
    OutsideApsidalBand(f64),
    #[error("normal matrix is singular (null-space hint {hint:?})")]
    SingularNormalMatrix { hint: Vec<f64> },
    #[error("Hessian singular at iteration {iteration}, x = {x:?}")]
    SingularHessian { iteration: u32, x: Vec<f64> },
    #[error("leveling network is disconnected: {0:?} cannot reach a fixed node")]
    DisconnectedNetwork(Vec<String>),
    #[error("expected {expected} independent conditions, found {found}")]
    InconsistentConditionCount { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown Lambert zone `{0}`")]
    UnknownZone(String),
}

/// Which way a star fails to cross the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Circumpolar {
    NeverSets,
    NeverRises,
}

impl std::fmt::Display for Circumpolar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Circumpolar::NeverSets => f.write_str("never sets"),
            Circumpolar::NeverRises => f.write_str("never rises"),
        }
    }
}

pub type Result<T> = std::result::Result<T, GeoError>;
