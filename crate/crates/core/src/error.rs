use thiserror::Error;

use crate::action::ActionViolation;
use crate::frontend::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for {n} elements")]
    EntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("zero index {zero} is out of range for {n} elements")]
    ZeroOutOfRange { zero: usize, n: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no element absorbs every product")]
    NoZero,
    #[error("the designated zero is not absorbing against element {0}")]
    ZeroNotAbsorbing(usize),
    #[error("element {0} has more than one inverse")]
    InverseNotUnique(usize),
    #[error("element {0} has no inverse")]
    InverseMissing(usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("set is not an ideal of the idempotent semilattice")]
    NotAnIdeal,
    #[error("generator {0} is not injective")]
    NotInjective(usize),
    #[error("generator {generator} has {found} images, expected {expected}")]
    DegreeMismatch { generator: usize, expected: usize, found: usize },
    #[error("image {image} of generator {generator} is outside the {degree} points")]
    ImageOutOfRange { generator: usize, image: usize, degree: usize },
    #[error("closure exceeded {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("labels: {0}")]
    BadLabels(String),
    #[error("the zero idempotent generates no filter")]
    ZeroGeneratesNoFilter,
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("the tight spectrum is empty (no nonzero idempotents)")]
    EmptySpectrum,
    #[error("character is not in the domain of element {0}")]
    NotInDomain(usize),
    #[error("invalid action: {0}")]
    InvalidAction(ActionViolation),
    #[error("point {point} is outside the domain of element {s}")]
    DomainViolation { s: usize, point: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(
        "theorem violation for {property}: criterion={criterion}, direct={direct} ({detail})"
    )]
    TheoremViolation { property: String, criterion: bool, direct: bool, detail: String },
    #[error("{what} parameter {value} exceeds the cap {cap}")]
    CapExceeded { what: String, value: usize, cap: usize },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
