//! Error type shared by the algebraic modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A rational function whose denominator vanishes at the root of unity
    /// even after cancelling all common cyclotomic factors.
    #[error("not specializable at xi: denominator {denominator} vanishes")]
    NotSpecializable { denominator: String },

    /// The straightening engine ran past its step budget without reaching a
    /// canonical form. Only reachable for rank >= 3 Cartan data, where the
    /// local rewrite rules are not a complete straightening system.
    #[error("no canonical form: {0}")]
    NoCanonicalForm(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
