use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HallError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported field size q = {0}; expected one of 2, 3, 5")]
    InvalidQ(u32),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("vertex {0} is not real (reflections need a loop-free vertex)")]
    NotReal(String),
    #[error("vertex {vertex} is not a {wanted}")]
    WrongVertexKind { vertex: String, wanted: &'static str },
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("no resolution found within bound {0}")]
    ResolutionNotFound(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("unsupported at fixed q: {0}")]
    Unsupported(String),
    #[error("invalid charge: {0}")]
    InvalidCharge(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl HallError {
    pub fn is_resource(&self) -> bool {
        matches!(self, HallError::Resource(_) | HallError::ResolutionNotFound(_))
    }
}

pub type Result<T, E = HallError> = std::result::Result<T, E>;
