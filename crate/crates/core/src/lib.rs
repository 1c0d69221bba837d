//! Numerical verification of Rolle's Theorem and the Mean Value Theorem.

pub mod calculus;
pub mod cli;
pub mod expr;
pub mod numeric;
pub mod theorem;
