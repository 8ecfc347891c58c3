use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("site count must be at least 1")]
    ZeroSites,
    #[error("site index {index} out of range for {sites} sites")]
    SiteOutOfRange { index: usize, sites: usize },
    #[error("occupation vector has {found} entries, basis expects {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operator bases are incompatible: {0}")]
    BasisMismatch(String),
    #[error("matrix is not hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("vectors are not orthonormal (max gram deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("basis must allow at least {required} quanta")]
    InsufficientQuanta { required: u32 },
    #[error("momentum label nu={nu} is not valid for {sites} sites")]
    InvalidMomentum { nu: i32, sites: usize },
    #[error("lambda grid is empty")]
    EmptyGrid,
    #[error("lambda grid is not sorted ascending")]
    UnsortedGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
