use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("coefficient {0} exceeds the 2^31 limit")]
    CoefficientOverflow(i64),
    #[error("model has continuous variables; the internal solver only handles 0-1 models")]
    ContinuousVariables,
}
