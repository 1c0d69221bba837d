//! Symbolic differentiation, simplification and smoothness analysis.

mod diff;
mod simplify;
mod smoothness;

pub use diff::differentiate;
pub use simplify::simplify;
pub use smoothness::{analyze_smoothness, HazardKind, SmoothnessReport, Verdict, Witness};
