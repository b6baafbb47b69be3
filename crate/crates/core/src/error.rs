use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("weight rule violated: {0}")]
    Weight(String),
    #[error("codifferential requires odd weight, got {0}")]
    EvenWeight(String),
    #[error("not an isomorphism candidate: {0}")]
    Singular(String),
    #[error("window not closable at cell {0}")]
    WindowNotClosable(String),
    #[error("deformation fails at order {0}")]
    DeformationFails(usize),
    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIsomorphism(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
