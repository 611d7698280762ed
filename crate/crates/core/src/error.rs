use num_rational::BigRational;
use thiserror::Error;

use crate::conditions::ConditionReport;
use crate::hypergraph::{Edge, Matching, PartialTuple};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("strict and weak side must differ (both are {0})")]
    InvalidSides(usize),

    #[error("side set {sides:?} must be a nonempty proper subset of the {r} sides")]
    InvalidSubset { sides: Vec<usize>, r: usize },

    #[error("operation requires r = {expected}, got r = {got}")]
    UnsupportedArity { expected: usize, got: usize },

    #[error("nothing to contract: r = {0} is at most 3")]
    NothingToContract(usize),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("no near-perfect matching found ({nodes} search nodes)")]
    NoNearPerfectFound { nodes: u64 },

    /// A counting step of the augmentation found no candidate. The witness is a
    /// tuple whose degree breaks the degree hypothesis.
    #[error("degree hypothesis violated: {witness} has degree {degree}, needs {}{}", if *.strict { ">" } else { ">=" }, .bound)]
    HypothesisViolated {
        witness: PartialTuple,
        degree: usize,
        bound: BigRational,
        strict: bool,
    },

    #[error("degree condition does not hold:\n{0}")]
    ConditionViolated(Box<ConditionReport>),

    #[error("not a fractional cover: edge {edge} has weight {weight}")]
    NotACover { edge: Edge, weight: BigRational },

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("search budget of {budget} nodes exhausted (best matching found has size {})", .best.len())]
    BudgetExhausted { budget: u64, best: Matching },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
