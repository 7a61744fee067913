//! Ground truth for the ghost formulas: `π1(X/G)` read off the quotient
//! complex itself.
//!
//! [`quotient`] depends only on the action and complex modules, never on
//! [`crate::ghost`]; [`compare`] runs both sides on the same space.

pub mod compare;
pub mod quotient;

pub use compare::{compare_formula_vs_oracle, CompareError, CompareOptions, ComparisonReport};
pub use quotient::{oracle_pi1_quotient, OracleResult};
