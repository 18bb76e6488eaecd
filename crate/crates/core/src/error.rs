use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    BadCharacteristic(u32),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("ideal generator {0} has degree below 2")]
    LowDegreeGenerator(String),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix does not define a morphism: {0}")]
    IllDefined(String),
    #[error("element is not in the image: {0}")]
    NotInImage(String),
    #[error("morphism is neither injective nor surjective")]
    NeitherMonoNorEpi,
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
