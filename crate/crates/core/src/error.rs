use crate::arith::{ArithError, Split, SplitSignal};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("the zero form has no rank")]
    ZeroForm,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("projection is undefined at the center")]
    AtCenter,
    #[error("point does not lie in the osculating flag")]
    NotInFlag,
    #[error("operation requires rational input")]
    NotRational,
    #[error("tangent-space probe degenerate after {0} attempts")]
    DegenerateSample(usize),
}

impl SplitSignal for Error {
    fn as_split(&self) -> Option<&Split> {
        match self {
            Error::Arith(a) => a.as_split(),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
