use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quandle table: {0}")]
    InvalidQuandle(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: i64, modulus: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid coefficient module: {0}")]
    InvalidCoefficients(String),
    #[error("invalid quandle module: {0}")]
    InvalidModule(String),
    #[error("not a quandle homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("differentials do not compose to zero")]
    NonZeroComposition,
    #[error("invalid principal extension data: {0}")]
    InvalidPrincipal(String),
    #[error("point is not a unit vector (|x|^2 = {0})")]
    NotUnit(f64),
    #[error("sign decision within tolerance of the section boundary: {0}")]
    BoundaryAmbiguous(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
