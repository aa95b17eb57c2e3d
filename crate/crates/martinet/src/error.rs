//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Reciprocal of a jet whose constant term vanishes.
    #[error("jet has zero constant term, reciprocal is undefined")]
    ZeroConstantTerm,

    /// Composition `f(g)` of germs at the origin needs `g(0) = 0`.
    #[error("inner jet of a composition must vanish at the origin (constant term {0})")]
    NonzeroInnerConstant(String),

    /// Reversion needs an invertible linear part.
    #[error("jet reversion needs a nonzero linear coefficient")]
    NonUnitLinearTerm,

    /// Classification of an order-`k` germ needs truncation order >= 2k-1.
    #[error("truncation order {order} too small for an order-{k} germ (need at least {needed})")]
    InsufficientOrder {
        k: usize,
        order: usize,
        needed: usize,
    },

    /// Normalization asked for on a jet with no usable leading coefficient.
    #[error("leading jet coefficient is zero up to the truncation order")]
    LeadingCoefficientZero,

    /// A field handed to the inverse of the field/function bijection does not
    /// preserve the 1-form.
    #[error("field does not preserve (1+x)dy (max residual {residual:.3e})")]
    NotMuPreserving { residual: f64 },

    /// A conjugacy germ must satisfy psi(0) = 0 and psi'(0) = 1.
    #[error("psi must satisfy psi(0) = 0 and psi'(0) = 1")]
    InadmissiblePsi,

    /// An unfolding of an order-`k` germ takes exactly `k` parameters.
    #[error("expected {expected} unfolding parameters, got {got}")]
    BadArity { expected: usize, got: usize },

    /// A coefficient string could not be parsed.
    #[error("cannot parse coefficient {0:?}")]
    ParseCoeff(String),

    /// Anything else rejected at a public boundary.
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
