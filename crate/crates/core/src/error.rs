use thiserror::Error;

/// Errors raised by the symbol, assembly, spectral and factorization engines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GsioError {
    #[error("point {re}+{im}i is not on the unit circle (|xi|-1 = {deviation:e})")]
    NonUnimodularPoint { re: f64, im: f64, deviation: f64 },

    #[error("Fourier tail could not be certified below {tolerance:e}: {detail}")]
    TailNotConverged { tolerance: f64, detail: String },

    #[error("{what} vanishes on the unit circle (root modulus {modulus})")]
    NotInvertibleOnCircle { what: String, modulus: f64 },

    #[error("winding number mismatch: roots give {algebraic}, sampled phase gives {sampled}")]
    WindingMismatch { algebraic: i64, sampled: i64 },

    #[error("inner factor must be a monomial z^k with k >= 1")]
    NotMonomialInner,

    #[error("order {order} leaves no interior band for bandwidth {bandwidth}")]
    InsufficientOrder { order: usize, bandwidth: usize },

    #[error("kernel truncation {available} is below the {required} modes required for r = {radius}")]
    OrderTooSmall { radius: f64, required: usize, available: usize },

    #[error("eigenvalue solver failed: {0}")]
    EigSolverFailure(String),

    #[error("root splitting failed: {0}")]
    RootSplitFailure(String),

    #[error("kernel dimensions did not stabilize: {0}")]
    ProbeUnstable(String),

    #[error("factorization residual {residual:e} exceeds {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("grid of {samples} samples aliases bandwidth {bandwidth}")]
    AliasRisk { samples: usize, bandwidth: usize },

    #[error("matrix symbol has role {found}, expected {expected}")]
    RoleMismatch { expected: String, found: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl GsioError {
    /// Stable snake_case tag for reports and exit-code mapping.
    pub fn reason(&self) -> &'static str {
        match self {
            GsioError::NonUnimodularPoint { .. } => "non_unimodular_point",
            GsioError::TailNotConverged { .. } => "tail_not_converged",
            GsioError::NotInvertibleOnCircle { .. } => "not_invertible_on_circle",
            GsioError::WindingMismatch { .. } => "winding_mismatch",
            GsioError::NotMonomialInner => "not_monomial_inner",
            GsioError::InsufficientOrder { .. } => "insufficient_order",
            GsioError::OrderTooSmall { .. } => "order_too_small",
            GsioError::EigSolverFailure(_) => "eig_solver_failure",
            GsioError::RootSplitFailure(_) => "root_split_failure",
            GsioError::ProbeUnstable(_) => "probe_unstable",
            GsioError::ResidualTooLarge { .. } => "residual_too_large",
            GsioError::InternalInconsistency(_) => "internal_inconsistency",
            GsioError::AliasRisk { .. } => "alias_risk",
            GsioError::RoleMismatch { .. } => "role_mismatch",
            GsioError::InvalidArgument(_) => "invalid_argument",
            GsioError::Parse { .. } => "parse_error",
            GsioError::Io(_) => "io_error",
        }
    }

    /// True when the computation ran but honestly declined to certify an answer.
    pub fn is_abstention(&self) -> bool {
        matches!(
            self,
            GsioError::TailNotConverged { .. }
                | GsioError::NotInvertibleOnCircle { .. }
                | GsioError::WindingMismatch { .. }
                | GsioError::EigSolverFailure(_)
                | GsioError::RootSplitFailure(_)
                | GsioError::ProbeUnstable(_)
                | GsioError::ResidualTooLarge { .. }
                | GsioError::InternalInconsistency(_)
                | GsioError::AliasRisk { .. }
        )
    }

    pub(crate) fn vanishes(what: impl Into<String>, modulus: f64) -> Self {
        GsioError::NotInvertibleOnCircle { what: what.into(), modulus }
    }
}

pub type Result<T> = std::result::Result<T, GsioError>;
