//! Exact solvers and verification harness for lexicographically-maximal and
//! maximum-weight matching and matroid intersection.
//!
//! A solution is lex-maximal if it takes as many heaviest elements as
//! possible, then as many second-heaviest, and so on. How well a lex-maximal
//! solution approximates the maximum weight is governed by the dispersion
//! ratio `alpha`: the minimum ratio of consecutive distinct weight values.
//! Above the threshold 2 the two notions coincide; at or below 2 a
//! lex-maximal solution is an exact `alpha/2`-approximation, and that bound
//! is tight. Everything here computes with arbitrary-precision rationals so
//! those statements can be checked with exact equality against brute-force
//! oracles.

pub mod elems;
pub mod error;
pub mod harness;
pub mod intersection;
pub mod matching;
pub mod matroid;
pub mod weights;

pub use elems::ElemSet;
pub use error::{Error, Result};
pub use weights::{Alpha, LexSignature, Rational, Weight};

/// Brute-force enumeration bounds, overridable through the
/// `LEXOPT_ORACLE_LIMIT` environment variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Maximum `|E|` for exhaustive matching enumeration.
    pub matching_edges: usize,
    /// Maximum ground-set size for exhaustive common-independent-set
    /// enumeration.
    pub intersection_ground: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            matching_edges: matching::DEFAULT_ORACLE_EDGE_LIMIT,
            intersection_ground: intersection::DEFAULT_ORACLE_GROUND_LIMIT,
        }
    }
}

/// Resolves the enumeration bounds, honoring `LEXOPT_ORACLE_LIMIT` when set
/// (a single size applied to both kinds).
pub fn oracle_limits() -> OracleLimits {
    match std::env::var("LEXOPT_ORACLE_LIMIT").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(limit) => OracleLimits { matching_edges: limit, intersection_ground: limit },
        None => OracleLimits::default(),
    }
}
