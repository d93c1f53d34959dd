use std::fmt;

use thiserror::Error;

/// The quantale law that a candidate structure failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Axiom {
    OrderAntisymmetry,
    JoinExists,
    MeetExists,
    Bottom,
    Top,
    JoinTable,
    Associativity,
    Commutativity,
    UnitLaw,
    JoinDistributivity,
    BottomAbsorption,
    Residuation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::OrderAntisymmetry => "order antisymmetry",
            Axiom::JoinExists => "existence of binary joins",
            Axiom::MeetExists => "existence of binary meets",
            Axiom::Bottom => "least element",
            Axiom::Top => "greatest element",
            Axiom::JoinTable => "join table is a semilattice agreeing with the order",
            Axiom::Associativity => "associativity of &",
            Axiom::Commutativity => "commutativity of &",
            Axiom::UnitLaw => "unit law k & p = p",
            Axiom::JoinDistributivity => "& distributes over binary joins",
            Axiom::BottomAbsorption => "& distributes over the empty join (p & bot = bot)",
            Axiom::Residuation => "residuation p & q <= r iff p <= q -> r",
        };
        f.write_str(s)
    }
}

/// Which partition axiom a candidate family violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum PartitionAxiom {
    /// Distinct blocks annihilate pointwise.
    Disjoint,
    /// Blocks cover every point with join `k`.
    PointCover,
    /// Every block has join `k` over the points.
    BlockCover,
    /// Blocks must be pairwise distinct Q-subsets.
    Distinct,
}

impl fmt::Display for PartitionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PartitionAxiom::Disjoint => "(P1) Sx & Tx = bot for distinct blocks",
            PartitionAxiom::PointCover => "(P2) join of Sx over blocks is k",
            PartitionAxiom::BlockCover => "(P3) join of Sx over points is k",
            PartitionAxiom::Distinct => "blocks are pairwise distinct",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("axiom violated: {axiom} (witness: {})", .witness.join(", "))]
    AxiomViolation { axiom: Axiom, witness: Vec<String> },

    #[error("trivial quantale: bottom equals the unit")]
    TrivialQuantale,

    #[error("empty carrier")]
    EmptyCarrier,

    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("missing product {0} & {1}")]
    MissingProduct(String, String),

    #[error("conflicting products for {a} & {b}: `{first}` vs `{second}`")]
    ConflictingProduct {
        a: String,
        b: String,
        first: String,
        second: String,
    },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown quantale `{0}`")]
    UnknownName(String),

    #[error("set mismatch: expected {expected}, found {found}")]
    SetMismatch { expected: String, found: String },

    #[error("relations are valued in different quantales")]
    QuantaleMismatch,

    #[error("not a Q-map: id <= adjoint . relation fails at `{witness}`")]
    NotAMap { witness: String },

    #[error("not the graph of a crisp map: {0}")]
    NotGraph(String),

    #[error("`{0}` is not a member of the enclosing set")]
    NotASubset(String),

    #[error("Q-map is not surjective: {0}")]
    NotSurjective(String),

    #[error("invalid Q-partition: {axiom} (witness: {witness})")]
    InvalidPartition {
        axiom: PartitionAxiom,
        witness: String,
    },

    #[error("budget exceeded: {needed} candidates requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("verification failed for {equation}: {witness}")]
    VerificationFailed { equation: String, witness: String },

    #[error("not a partial map: {0}")]
    NotPartial(String),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
