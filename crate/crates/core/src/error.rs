use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure a constructor or operation in this crate can raise.
///
/// Coherence checkers never return these for a failed law; they record a
/// failing entry in a [`crate::report::Report`] instead. These errors are for
/// malformed inputs and for structure that cannot be built at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("empty group table")]
    EmptyGroup,
    #[error("map {name} is not a homomorphism: image({a}*{b}) != image({a})*image({b})")]
    NotAHomomorphism { name: String, a: usize, b: usize },
    #[error("homomorphism {name} has {got} images, source order is {expected}")]
    HomArity { name: String, got: usize, expected: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("invalid signed permutation: {0}")]
    InvalidSignedPerm(String),
    #[error("element list is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("extent mismatch: expected group {expected}, found {found}")]
    ExtentMismatch { expected: String, found: String },
    #[error("dimension {dim} exceeds the catalog cap {cap}")]
    DimCapExceeded { dim: usize, cap: usize },
    #[error("catalog incomplete: {0}")]
    CatalogIncomplete(String),
    #[error("coverage gap: {0}")]
    CoverageGap(String),
    #[error("A(t) for t = element {element} of dim {dim} is not fixed by group element {g}")]
    NonTrivialActionOnTrivialRep { dim: usize, element: usize, g: usize },
    #[error("invalid pointed G-set: {0}")]
    InvalidGSet(String),
    #[error("invalid based map: {0}")]
    InvalidMap(String),
    #[error("invalid representation {label}: {reason}")]
    InvalidRep { label: String, reason: String },
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
    #[error("invalid functor data: {0}")]
    InvalidFunctor(String),
    #[error("quotient is not well defined: {0}")]
    NotWellDefined(String),
    #[error("coherence failure: {0}")]
    CoherenceFailure(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
