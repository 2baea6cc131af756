//! Variable decomposition for quantifier-free linear real arithmetic.
//!
//! A formula is decomposable with respect to a partition of its variables if it
//! is equivalent to a Boolean combination of atoms that each mention variables
//! of a single block. [`vardec::decide`] answers the question, returning either a
//! decomposition or a counterexample that [`cert`] can turn into a checkable
//! certificate.
//!
//! Variables are `usize` indices in declaration order. All arithmetic is exact.

pub mod cert;
pub mod cover;
pub mod disjunct;
pub mod exec;
pub mod formula;
pub mod partition;
pub mod pred;
pub mod sat;
pub mod vardec;

pub use vardec_linalg::{LinalgError, Q};

pub use formula::{Cmp, CompiledFormula, Formula, LinExpr, Nnf};
pub use partition::Partition;
pub use pred::{Canonical, LinearPredicate, PredicateSet, Rel};

/// A total assignment of rationals to variables `0..n`.
pub type Model = Vec<Q>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("partition has a single block")]
    UnaryPartition,
    #[error("partition is not binary")]
    NotBinary,
    #[error("predicate set is unsatisfiable")]
    Unsat,
    #[error("predicate set is complex for the partition")]
    Complex,
    #[error("predicate set is simple for the partition")]
    Simple,
    #[error("partition hint does not separate variables {0} and {1}")]
    HintDoesNotSeparate(usize, usize),
    #[error("model violates {0}")]
    ModelViolates(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
