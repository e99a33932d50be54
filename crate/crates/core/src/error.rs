use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("not a basis: the given vectors are linearly dependent")]
    NotABasis,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("degree additivity violated: {0}")]
    Degree(String),
    #[error("associativity violated: {0}")]
    Associativity(String),
    #[error("unit axiom violated: {0}")]
    Unit(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("no triangular data attached to the algebra")]
    NoTriangular,
    #[error("unsupported semisimple type: {0}")]
    UnsupportedSemisimple(String),
    #[error("module axiom violated: {0}")]
    ModuleAxiom(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("not A^{{<=0}}-injective: the map onto the coinduced layer {layer} is not surjective")]
    NotLeInjective { layer: usize },
    #[error("input not A^{{>=0}}-injective (term {term})")]
    NotGeInjective { term: usize },
    #[error("inconclusive: prefix depth {have} is shorter than the required {need}")]
    Inconclusive { have: usize, need: usize },
    #[error("cannot bound Hom support: {0}")]
    CannotBound(String),
    #[error("increase depth cap: {0}")]
    DepthCap(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::NotABasis => "not-a-basis",
            Error::Parse(_) => "parse",
            Error::Degree(_) => "degree",
            Error::Associativity(_) => "associativity",
            Error::Unit(_) => "unit",
            Error::NotSubalgebra(_) => "not-subalgebra",
            Error::NoTriangular => "no-triangular",
            Error::UnsupportedSemisimple(_) => "unsupported-semisimple",
            Error::ModuleAxiom(_) => "module-axiom",
            Error::Incompatible(_) => "incompatible",
            Error::NotLeInjective { .. } => "not-le-injective",
            Error::NotGeInjective { .. } => "not-ge-injective",
            Error::Inconclusive { .. } => "inconclusive",
            Error::CannotBound(_) => "cannot-bound",
            Error::DepthCap(_) => "depth-cap",
            Error::SizeGuard(_) => "size-guard",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }
}
