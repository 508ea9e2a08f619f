use thiserror::Error;

use crate::continuation::ContinuationError;
use crate::ifunction::IFunctionError;
use crate::mirror::MirrorError;
use crate::ring::RingError;
use crate::series::SeriesError;
use crate::singularity::SingularityError;
use crate::tautological::TautologicalError;
use crate::twist::TwistError;

/// Umbrella error for callers that drive several modules at once.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Tautological(#[from] TautologicalError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    IFunction(#[from] IFunctionError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Continuation(#[from] ContinuationError),
}
