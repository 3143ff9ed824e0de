use thiserror::Error;

pub type Result<T> = std::result::Result<T, WbmError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WbmError {
    /// Argument outside the domain of a special function or field.
    #[error("domain error in {function}: argument {arg}")]
    Domain { function: &'static str, arg: f64 },

    #[error("degenerate curve: |f'(t)| = {speed:e} at t = {t}")]
    DegenerateCurve { t: f64, speed: f64 },

    #[error("invalid basis index: family {family}, order {order} (max order {max_order})")]
    InvalidIndex {
        family: u8,
        order: usize,
        max_order: usize,
    },

    #[error("point source at distance {distance:e} from the boundary")]
    SourceOnBoundary { distance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl WbmError {
    /// Errors caused by the user's configuration rather than by the numerics.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            WbmError::Config(_) | WbmError::InvalidParameter(_) | WbmError::Io(_)
        )
    }
}

impl From<std::io::Error> for WbmError {
    fn from(e: std::io::Error) -> Self {
        WbmError::Io(e.to_string())
    }
}

impl From<csv::Error> for WbmError {
    fn from(e: csv::Error) -> Self {
        WbmError::Io(e.to_string())
    }
}
