use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("field of order {q}^{m} exceeds the 2^20 enumeration guard")]
    DegreeTooLarge { q: u64, m: usize },
    #[error("polynomial {0:?} is not a primitive irreducible modulus")]
    BadModulus(Vec<u32>),
    #[error("empty element list")]
    EmptyList,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("lattice of F_{q}^{n} has {count} subspaces, above the cap of {cap}")]
    LatticeTooLarge { q: u32, n: usize, count: u128, cap: u128 },
    #[error("subspace is not a member of the family")]
    NotAMember,
    #[error("table is not total: {missing} subspaces have no value")]
    NotTotal { missing: usize },
    #[error("{system} axiom {axiom} violated: {witness}")]
    AxiomViolation { system: String, axiom: String, witness: String },
    #[error("rank {k} is not in 0..={n}")]
    BadRank { k: usize, n: usize },
    #[error("generator matrix has rank {rank} but {k} rows")]
    RankDeficientG { rank: usize, k: usize },
    #[error("{s} does not divide {m}")]
    BadDivisibility { s: usize, m: usize },
    #[error("gcd({p}, {s}) != 1")]
    NotCoprime { p: usize, s: usize },
    #[error("the zero space has no spread index")]
    ZeroSpace,
    #[error("no converter from {from} to {to}")]
    PathEdgeMissing { from: String, to: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
