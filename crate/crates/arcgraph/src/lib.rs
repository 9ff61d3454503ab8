//! Decision procedures for divisor-to-value arcs on the positive integers.
//!
//! For an arithmetic function g (digit sum, sum of digit powers, divisor
//! count, prime counts) draw an arc n -> u whenever some multiple N of n
//! has g(N) = u. This crate decides arcs exactly where theory permits,
//! constructs explicit witnesses, and emits checkable refutation
//! certificates; where no exact method exists it searches under an
//! explicit budget and says so. The out-set of n (all u reachable from n)
//! is classified structurally: full, a tail above a minimum, cofinite with
//! a computed Frobenius number, or pinned to a residue class.
//!
//! Layers, bottom up:
//! - [`arith`]: digits, factorization, multiplicative statistics, order
//!   profiles of b mod n.
//! - [`arcs`]: single-arc deciders, witness builders, certificates.
//! - [`outsets`]: whole-out-set classification and enumeration.
//! - [`graph`]: friendship, congruence-refined arcs, bounded chains,
//!   polygon search, subgraph export.

pub mod arcs;
pub mod arith;
mod budget;
mod error;
pub mod graph;
pub mod outsets;

pub use budget::{ExplorationBudget, INPUT_CAP_MAX};
pub use error::{Error, Result};

/// Arbitrary-precision nonnegative integer, the domain of everything here.
pub type Natural = num_bigint::BigUint;
