use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
///
/// Variants split into two families: input problems (bad files, invalid
/// matrices, unsupported parameters) and internal invariant failures that
/// can only arise from a bug or a corrupted input slipping past validation.
/// [`Error::is_internal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine numbers over Q(sqrt({0})) and Q(sqrt({1}))")]
    MixedRadicands(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand {0} is not a square-free integer >= 2")]
    InvalidRadicand(u64),

    #[error("irrational entry at {location} but no radicand was given")]
    MissingRadicand { location: String },

    #[error("cannot parse exact number {0:?}")]
    Parse(String),

    #[error("(rank, degree) = ({rho}, {degree}) is not a simple Euclidean Jordan algebra")]
    InadmissibleGeometry { rho: u32, degree: u32 },

    #[error("gram matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("gram matrix is not symmetric at ({row}, {col}): {upper} != {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: String,
        lower: String,
    },

    #[error("gram diagonal entry ({index}, {index}) is {value}, expected 1")]
    BadDiagonal { index: usize, value: String },

    #[error("gram entry ({row}, {col}) = {value} is outside 0 <= a < 1")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("points {row} and {col} coincide (gram entry 1)")]
    DuplicatePoint { row: usize, col: usize },

    #[error("point {index} has squared norm {norm}, expected 1")]
    NotUnitVector { index: usize, norm: String },

    #[error("point {index} has {len} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        len: usize,
        expected: usize,
    },

    #[error("coordinates are only accepted for rank-2 (spherical) geometries, got rank {0}")]
    PointsRequireSphere(u32),

    #[error("a design needs at least two points, got {0}")]
    TooFewPoints(usize),

    #[error("design file: {0}")]
    Format(String),

    #[error("regular {0}-gon is not supported: cos(2pi/{0}) is not quadratic over Q")]
    UnsupportedPolygon(u32),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("design is not tight: {0}")]
    NotTight(String),

    #[error("strength sums vanish through k = {max_k}, beyond the bound t <= 2s - eps")]
    BoundViolation { max_k: u32 },

    #[error("rank mismatch for L_{index}: closed form {closed_form}, trace {trace}, elimination {elimination}")]
    RankMismatch {
        index: usize,
        closed_form: String,
        trace: String,
        elimination: usize,
    },

    #[error("closed-form rank of L_{index} is {value}, not a positive integer")]
    NonIntegralRank { index: usize, value: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that indicate a bug or an internally inconsistent
    /// input rather than a user mistake.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::BoundViolation { .. }
                | Error::RankMismatch { .. }
                | Error::NonIntegralRank { .. }
                | Error::Invariant(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
