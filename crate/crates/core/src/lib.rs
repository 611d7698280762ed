//! Perfect matchings in n-balanced r-partite r-uniform hypergraphs.
//!
//! The crate covers degree-hypothesis checking, a constructive perfect-matching
//! solver for hypergraphs whose (r-1)-tuple degrees exceed `n/2`, an exact
//! rational LP engine for fractional matchings and covers, generators for the
//! extremal instance families, and a brute-force oracle used to cross-check all
//! of the above.

pub mod conditions;
pub mod error;
pub mod fractional;
pub mod generators;
pub mod hypergraph;
pub mod matcher;
pub mod oracle;
pub mod rational;
pub mod simplex;
pub mod text;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, Matching, MatchingVerdict, PartialTuple, SideSet, Vertex};
