use thiserror::Error;

use crate::frame::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("frame must contain at least one element")]
    EmptyFrame,
    #[error("frame of {size} elements exceeds the cap of {cap}")]
    FrameTooLarge { size: usize, cap: usize },
    #[error("frame labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate frame label {0:?}")]
    DuplicateLabel(String),
    #[error("element {0:?} is not in the frame")]
    UnknownElement(String),
    #[error("subset {0} lies outside the frame")]
    SubsetOutOfFrame(Subset),
    #[error("operands are defined on different frames")]
    FrameMismatch,
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("the conditioning event must be nonempty")]
    EmptyEvent,
    #[error("masses sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("negative mass {value} on {subset}")]
    NegativeMass { subset: Subset, value: f64 },
    #[error("non-finite mass on {0}")]
    NonFinite(Subset),
    #[error("not a belief function: Möbius inverse gives mass {mass} on {subset}")]
    NotABeliefFunction { subset: Subset, mass: f64 },
    #[error("weights sum to {sum}, expected 1")]
    WeightMismatch { sum: f64 },
    #[error("negative weight {0}")]
    NegativeWeight(f64),
    #[error("cannot draw {requested} focal elements, only {available} nonempty subsets exist")]
    BadCount { requested: usize, available: usize },
    #[error("total conflict (kappa = {kappa}): Dempster combination undefined")]
    TotalConflict { kappa: f64 },
    #[error("zero denominator for event {0} in credal conditioning")]
    UndefinedDenominator(Subset),
    #[error("belief of conditioning event {0} is zero: b(B) = 0")]
    ZeroBelief(Subset),
    #[error("conditional on focal element {event} is undefined: {reason}")]
    UndefinedConditional { event: Subset, reason: String },
    #[error("ternary plots need a 3-element frame and a 2-element event (got n = {frame}, |A| = {event})")]
    WrongDimensions { frame: usize, event: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
