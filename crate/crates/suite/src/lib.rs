//! Oracles and acceptance runners for `slender-core`.
//!
//! Each criterion is a function of a seed that reports pass or fail with a
//! one-line summary; [`run_all`] runs them in order.

pub mod criteria;
pub mod oracles;

pub use criteria::{run, run_all, Outcome, CRITERIA};
