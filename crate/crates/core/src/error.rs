use thiserror::Error;

/// Errors shared across the library.
///
/// Construction-time validation is strict: every public constructor either
/// returns a fully valid value or one of these errors, so downstream code can
/// assume the invariants hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family does not contain the empty set")]
    MissingBottom,
    #[error("family does not contain the full atom set")]
    MissingTop,
    #[error("family does not contain atom {0} as a singleton")]
    MissingAtom(usize),
    #[error("family is not intersection-closed: {0} ∩ {1} = {2} is absent")]
    NotIntersectionClosed(String, String, String),
    #[error("family contains a duplicate element {0}")]
    DuplicateElement(String),
    #[error("atom index {got} out of range (n_atoms = {n})")]
    AtomOutOfRange { got: usize, n: usize },
    #[error("element id {got} out of range (lattice has {n} elements)")]
    ElementOutOfRange { got: usize, n: usize },
    #[error("interval endpoints are not comparable: {0} and {1}")]
    NotComparable(String, String),
    #[error("lattices have different atom counts: {0} vs {1}")]
    AtomCountMismatch(usize, usize),

    #[error("monomial is not divisible by the requested divisor")]
    NotDivisible,
    #[error("variable {0:?} is not present where required")]
    VariableAbsent(String),
    #[error("unknown variable name {0:?}")]
    UnknownVariable(String),
    #[error("generator {0} divides generator {1}: generators are not minimal")]
    NonMinimalGenerators(usize, usize),
    #[error("ideal must have at least one generator")]
    NoGenerators,

    #[error("labeling assigns the unit monomial to element {0}")]
    UnitLabel(usize),
    #[error("labeling references element id {got} outside the lattice ({n} elements)")]
    LabelOutOfRange { got: usize, n: usize },

    #[error("complex has no vertices where at least one is required")]
    NoVertices,
    #[error("vertex {0:?} appears twice in the vertex list")]
    DuplicateVertex(String),
    #[error("facet references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} lies in no facet")]
    UncoveredVertex(String),
    #[error("complex is a simplex; the construction requires a non-simplex")]
    IsSimplex,
    #[error("complex has {vertices} vertices but the ideal has {generators} generators")]
    VertexGeneratorMismatch { vertices: usize, generators: usize },

    #[error("tree is invalid: {0}")]
    InvalidTree(String),

    #[error("{0} is not prime; prime fields require a prime modulus")]
    NotPrime(u64),
    #[error("unrecognized field spec {0:?} (expected q, f2, or f<p>)")]
    BadFieldSpec(String),

    #[error("set family is invalid: {0}")]
    InvalidFamily(String),
    #[error("a nonempty set is required here")]
    EmptySet,
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
