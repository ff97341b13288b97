use thiserror::Error;

/// Why a projective oriented form failed the Γ-form test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotGammaReason {
    /// `D + 4` has no square root in `Z[λ]`, so the associated matrix is not over `Z[λ]`.
    NonSquareDiscriminantShift,
    /// The associated matrix exists but does not lie in the Hecke group.
    NotInGroup,
}

impl std::fmt::Display for NotGammaReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotGammaReason::NonSquareDiscriminantShift => f.write_str("non-square-discriminant-shift"),
            NotGammaReason::NotInGroup => f.write_str("not-in-group"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ring context mismatch: q={left} vs q={right}")]
    ContextMismatch { left: u32, right: u32 },

    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a Γ-form ({0})")]
    NotGammaForm(NotGammaReason),

    /// A loop exceeded its iteration cap. Valid input never triggers this.
    #[error("internal diagnostic: {0}")]
    Diagnostic(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
