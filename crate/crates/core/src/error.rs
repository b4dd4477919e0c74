use thiserror::Error;

/// Errors surfaced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid transition matrix: {0}")]
    InvalidTransition(String),

    #[error("cannot estimate transition matrix: column {0} (true class) has zero total")]
    EmptyConfusionColumn(usize),

    #[error("probability vector not normalized: sum = {0}")]
    NotNormalized(f64),

    #[error("invalid feature set: {0}")]
    InvalidFeatureSet(String),

    #[error("invalid training config: {0}")]
    InvalidConfig(String),

    #[error("non-finite loss at epoch {epoch} (lr = {lr}); aborting training")]
    NonFiniteLoss { epoch: usize, lr: f64 },

    #[error("AUC undefined: need at least one positive and one negative label")]
    SingleClass,

    #[error("score lists and labels must have equal, nonzero length")]
    LengthMismatch,

    #[error("non-finite score at index {0}")]
    NonFiniteScore(usize),

    #[error("invalid ratings table: {0}")]
    InvalidRatings(String),

    #[error("Fleiss' kappa undefined: expected agreement is 1")]
    KappaUndefined,

    #[error("no operating point with true positive rate >= {0}")]
    SensitivityUnreachable(f64),

    #[error("exam {id}: acquisition day {day} outside schedule horizon {horizon}")]
    OutsideHorizon { id: String, day: u32, horizon: u32 },

    #[error("exam {id}: historical report day {report} precedes acquisition day {acq}")]
    ReportBeforeAcquisition { id: String, report: u32, acq: u32 },

    #[error("invalid cohort parameters: {0}")]
    InvalidCohortParams(String),

    #[error("labels length {labels} does not match requested n = {n}")]
    LabelCountMismatch { labels: usize, n: usize },

    #[error("csv schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
