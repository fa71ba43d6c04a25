use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(&'static str),

    #[error("degenerate 4-tuple: entries must be pairwise distinct")]
    Degenerate4Tuple,

    #[error("monotonicity failure: {0}")]
    MonotonicityFailure(&'static str),

    #[error("pair is not harmonic (log-residual {residual:e})")]
    NotHarmonic { residual: f64 },

    #[error("harmonic pair does not lie on the line")]
    NotOnLine,

    #[error("not collinear: harmonic pairs share no axis")]
    NotCollinear,

    #[error("no common perpendicular (separating or linked axes)")]
    NoCommonPerpendicular,

    #[error("ratio must be a positive finite number, got {0}")]
    InvalidRatio(f64),

    #[error("empty sample budget")]
    EmptySampleBudget,

    #[error("sampler starvation after {0} attempts")]
    SamplerStarvation(usize),

    #[error("zz-path is not closed")]
    NotClosed,

    #[error("invalid zz-path: {0}")]
    InvalidPath(String),

    #[error("invalid structure specification: {0}")]
    InvalidStructure(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
