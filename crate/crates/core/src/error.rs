use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("orbifold multiplicity must be at least 2, got {0}")]
    MultiplicityBelowTwo(u64),
    #[error("Hirzebruch-Jung chain is empty")]
    EmptyChain,
    #[error("Hirzebruch-Jung chain entry {0} is below 2")]
    ChainEntryBelowTwo(u64),
    #[error("({n}, {q}) is out of range: need 0 < q < N")]
    OutOfRange { n: u64, q: u64 },
    #[error("({n}, {q}) are not coprime")]
    NotCoprime { n: u64, q: u64 },
    #[error("gcd of an empty list")]
    EmptyGcd,
    #[error("integer overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("dual graph has no vertices")]
    Empty,
    #[error("vertex {index} has self-intersection -{value}; need e >= 1")]
    BadSelfIntersection { index: usize, value: u64 },
    #[error("edge ({0}, {1}) refers to a missing vertex")]
    EdgeOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("branch {0} attaches to a missing vertex")]
    BranchOutOfRange(usize),
    #[error("branch {index} has multiplicity {mult}; need m >= 2")]
    BranchMultiplicity { index: usize, mult: u64 },
    #[error("branch {0} has zero intersection number")]
    BranchIntersection(usize),
    #[error("exceptional configuration is disconnected")]
    Disconnected,
    #[error("intersection matrix is not negative definite: not a contractible exceptional configuration")]
    NotNegativeDefinite,
    #[error("graph class is {found}, operation needs ChainTwoBlackEnds")]
    WrongClass { found: &'static str },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("cusp exponents ({p}, {q}) must both be at least 2")]
    CuspExponent { p: u64, q: u64 },
    #[error("cusp exponents ({p}, {q}) are not coprime")]
    NonCoprime { p: u64, q: u64 },
    #[error("branch multiplicity {0} is below 2")]
    Multiplicity(u64),
    #[error("contact entry refers to missing branch ({0}, {1})")]
    ContactOutOfRange(usize, usize),
    #[error("contact entry pairs branch {0} with itself")]
    ContactSelf(usize),
    #[error("contact between branches {i} and {j} is {value}; allowed values are {allowed}")]
    InvalidContact {
        i: usize,
        j: usize,
        value: u64,
        allowed: String,
    },
    #[error("contact orders of smooth branches {0}, {1}, {2} violate the ultrametric rule")]
    NotUltrametric(usize, usize, usize),
    #[error("tangency order must be at least 1")]
    ZeroTangency,
    #[error("bound {name} must be at least {min}, got {value}")]
    Bound {
        name: &'static str,
        min: u64,
        value: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("orbifold multiplicity must be at least 2, got {0}")]
    Multiplicity(u64),
    #[error("fiber has no components")]
    EmptyFiber,
    #[error("fiber multiplicity must be at least 1")]
    ZeroFiberMultiplicity,
    #[error("inconsistent surface summary: {0}")]
    InconsistentSummary(String),
    #[error("not special: {0}; no abelianity verdict is claimed")]
    NotSpecial(String),
}
