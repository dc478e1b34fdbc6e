use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an order needs at least one element")]
    Empty,
    #[error("carrier has {0} elements; at most 64 are supported")]
    TooLarge(usize),
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CyclicOrder(String, String),
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("not distributive: {0} ∧ ({1} ∨ {2}) differs from ({0} ∧ {1}) ∨ ({0} ∧ {2})")]
    NotDistributive(String, String, String),
    #[error("map is not total: expected {expected} images, got {got}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("map image {0} is out of range for a codomain with {1} elements")]
    IndexOutOfRange(usize, usize),
    #[error("not a frame homomorphism: {0}")]
    NotAFrameHom(String),
    #[error("not a nucleus: {0}")]
    NotANucleus(String),
    #[error("not a sublocale: {0}")]
    NotASublocale(String),
    #[error("sublocales live on different frames")]
    CarrierMismatch,
    #[error("exactly one of the two frames is trivial, which forces 0 = 1 in the other")]
    TrivialMismatch,
    #[error("d-frame axiom {axiom} fails: {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("not a d-frame homomorphism: {0}")]
    NotADFrameHom(String),
    #[error("not a sub-d-locale: axiom {axiom} fails on the induced structure: {witness}")]
    NotASubDLocale { axiom: String, witness: String },
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("density verdicts disagree (definition says {definition}, characterization says {characterization})")]
    CharacterizationMismatch {
        definition: bool,
        characterization: bool,
    },
    #[error("equivalent conditions disagree on the {side} side: {values:?}")]
    EquivalenceMismatch {
        side: &'static str,
        values: Vec<bool>,
    },
    #[error("implication violated: {0}")]
    ImplicationViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator spec `{0}`")]
    UnknownSpec(String),
    #[error("{path}: {source}")]
    At { path: String, source: Box<Error> },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// Prefixes the error with the location it came from.
    pub fn at(self, path: impl Into<String>) -> Error {
        Error::At {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, without location prefixes.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }
}
