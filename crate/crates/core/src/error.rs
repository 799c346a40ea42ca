use thiserror::Error;

/// Errors raised by mesh construction, assembly, solving and recovery.
#[derive(Debug, Error)]
pub enum VemError {
    #[error("level {level} out of range [{min}, {max}]")]
    LevelOutOfRange { level: u32, min: u32, max: u32 },

    #[error("mesh construction invariant violated: {0}")]
    MeshInvariant(String),

    #[error("unsupported quadrature degree {0} (supported: 2, 4, 6, 8)")]
    UnsupportedDegree(u32),

    #[error("quadrature rule of degree {degree} failed exactness check (error {error:e})")]
    InexactRule { degree: u32, error: f64 },

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("unknown lift scheme `{0}`")]
    UnknownScheme(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("field belongs to level {field} but mesh is level {mesh}")]
    MeshMismatch { field: u32, mesh: u32 },

    #[error("solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("factorization breakdown at row {row} (pivot {pivot:e})")]
    Breakdown { row: usize, pivot: f64 },

    #[error("invalid solver configuration: {0}")]
    SolverConfig(String),

    #[error("patch {patch}: design matrix has rank {rank} < 10 ({sites} sites)")]
    RankDeficient { patch: usize, rank: usize, sites: usize },

    #[error("patch {patch}: {sites} fit sites, at least 10 needed")]
    TooFewSites { patch: usize, sites: usize },

    #[error("recovery patches need level >= 3, got {0}")]
    LiftLevel(u32),

    #[error("point ({x}, {y}) lies outside every recovery patch")]
    PointOutside { x: f64, y: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("level {level}: {source}")]
    AtLevel { level: u32, source: Box<VemError> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl VemError {
    /// Process exit code: 1 for configuration and I/O errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            VemError::AtLevel { source, .. } => source.exit_code(),
            VemError::LevelOutOfRange { .. }
            | VemError::UnsupportedDegree(_)
            | VemError::UnknownProblem(_)
            | VemError::UnknownScheme(_)
            | VemError::SolverConfig(_)
            | VemError::LiftLevel(_)
            | VemError::Config(_)
            | VemError::Io(_) => 1,
            _ => 2,
        }
    }

    pub fn at_level(self, level: u32) -> Self {
        match self {
            e @ VemError::AtLevel { .. } => e,
            e => VemError::AtLevel { level, source: Box::new(e) },
        }
    }
}

pub type Result<T> = std::result::Result<T, VemError>;
