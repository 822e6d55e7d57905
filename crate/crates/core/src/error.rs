use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit: {what} needs {required}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        required: usize,
        limit: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("carrier mismatch: {left} vs {right} elements")]
    CarrierMismatch { left: usize, right: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub(crate) fn check_carrier(left: usize, right: usize) -> Result<()> {
        if left == right {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left, right })
        }
    }

    pub(crate) fn check_limit(what: &'static str, required: usize, limit: usize) -> Result<()> {
        if required <= limit {
            Ok(())
        } else {
            Err(Error::ResourceLimit {
                what,
                required,
                limit,
            })
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
