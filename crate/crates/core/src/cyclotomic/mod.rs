//! Exact arithmetic in Q(ω) and dense matrices over it.

mod matrix;
mod number;

pub use matrix::{qutrit_count, CycMatrix};
pub use number::{rational, rational_int, CycNum, Rational};
