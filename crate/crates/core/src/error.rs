use thiserror::Error;

use crate::bilocale::Side;

/// Which binary operation failed to exist when checking lattice structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bound::Meet => "greatest lower bound",
            Bound::Join => "least upper bound",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("carrier is empty")]
    EmptyCarrier,

    #[error("{count} elements exceeds the size guard of {guard} for {what}")]
    SizeGuardExceeded {
        what: &'static str,
        count: usize,
        guard: usize,
    },

    #[error("element index {index} is out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("order is not antisymmetric: {a} <= {b} and {b} <= {a}")]
    NotAntisymmetric { a: usize, b: usize },

    #[error("elements {a} and {b} have no {bound}")]
    NotALattice { a: usize, b: usize, bound: Bound },

    #[error("distributivity fails at ({a}, {b}, {c}): a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c)")]
    NotDistributive { a: usize, b: usize, c: usize },

    #[error("frame law fails for element {a} and family {family:?}")]
    FrameLawFails { a: usize, family: Vec<usize> },

    #[error("{side} part is not a subframe: {reason}")]
    NotASubframe { side: Side, reason: String },

    #[error("covering condition fails at element {0}")]
    CoveringFails(usize),

    #[error("element {element} is not in the {side} part")]
    NotInSide { side: Side, element: usize },

    #[error("subset {0:?} is not a sublocale")]
    NotASublocale(Vec<usize>),

    #[error("mapping is not a frame homomorphism: {0}")]
    NotAFrameHom(String),

    #[error("mapping sends {element} in the {side} part outside the target's {side} part")]
    SideViolation { side: Side, element: usize },

    #[error("image of the right adjoint is not a sublocale")]
    ImageNotSublocale,

    #[error("tau{side} is not a topology: {reason}")]
    NotATopology { side: u8, reason: String },

    #[error("element {0} is not complemented")]
    NotComplemented(usize),

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    InFile { path: String, source: Box<Error> },
}

impl Error {
    /// The underlying error, with file context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
