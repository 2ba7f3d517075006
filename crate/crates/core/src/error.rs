use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("unknown step label {label:?} at position {position}")]
    UnknownLabel { label: char, position: usize },
    #[error("invalid step set: {0}")]
    InvalidStepSet(String),
    #[error("step set mismatch: {0}")]
    StepSetMismatch(String),
    #[error("{what} = {value} is out of range 0..={max}")]
    OutOfRange { what: &'static str, value: i64, max: i64 },
    #[error("path must end at height {expected}, found {found}{hint}")]
    EndHeight { expected: i64, found: i64, hint: &'static str },
    #[error("selector {selector} does not apply: {reason}")]
    Selector { selector: String, reason: String },
    #[error("sequence must sum to 1, found {0}")]
    SumNotOne(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent family parameters: {0}")]
    Family(String),
    #[error("enumeration budget of {limit} paths exceeded")]
    Budget { limit: u64 },
    #[error("{form}: argument outside domain, denominator {denominator} is not positive")]
    Domain { form: String, denominator: String },
    #[error("{form}: inexact division {numerator} / {denominator}")]
    InexactDivision { form: String, numerator: String, denominator: String },
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("fixed-point map did not stabilise after {iterations} iterations")]
    NonContractive { iterations: usize },
    #[error("series precondition violated: {0}")]
    Series(String),
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: i64, have: i64 },
    #[error("bijection precondition violated: {0}")]
    Bijection(String),
}

pub type Result<T> = std::result::Result<T, CfError>;
