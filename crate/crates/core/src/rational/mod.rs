//! Noncommutative rational expressions over the group algebra: parsing and
//! printing, compilation to linear systems whose inverse carries the
//! element, truncated expansion into coefficient tables, and common
//! denominators over the infinite cyclic group.

pub mod expand;
pub mod expr;
pub mod laurent;
pub mod parse;
pub mod system;

use thiserror::Error;

pub use expand::{expand_exact, expand_numeric, to_element, ExpansionMode, SeriesTruncation, SeriesTruncationJson};
pub use expr::{expr_add, expr_adjoint, expr_inv, expr_mul, expr_neg, expr_scale, RationalExpression};
pub use laurent::{quadruple_from_expression, Polynomial, RationalFunction};
pub use parse::{format_expression, parse, ParseError};
pub use system::{compile, solve_truncated, LinearSystem};

/// Failures of expansion and of common-denominator synthesis. `path` lists
/// child indices from the root to the offending node.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpandError {
    #[error("not expandable in exact mode at node {path:?}: {reason}")]
    NotExpandable { path: Vec<usize>, reason: String },
    #[error("inverted element has zero constant term at node {path:?}")]
    SingularConstantTerm { path: Vec<usize> },
    #[error("ℓ¹ dominance fails at node {path:?}: ratio {ratio}")]
    DominanceFailure { path: Vec<usize>, ratio: f64 },
    #[error("tail bound {achieved} does not reach tolerance {tol}")]
    ToleranceNotReached { tol: f64, achieved: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("expression is not a finitely supported element")]
    NotPolynomial,
    #[error("common denominators are only synthesized over the rank-1 group, got rank {rank}")]
    RankUnsupported { rank: usize },
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
}
