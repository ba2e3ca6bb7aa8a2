//! Constructive tools around slenderness of groups.
//!
//! The crate builds graph products of integer and finite cyclic vertex
//! groups with canonical normal forms, Dudley norms and exact root sets, and
//! uses them to solve or refute equation cascades `y_m = a_m·y_{m+1}^{k_m}`.
//! Certificates for conditions (*) and (**) are produced by
//! [`witness`]; [`hawaiian`] models truncations of Hawaiian-earring words and
//! [`cx`] implements a central amalgam of copies of the integers in which the
//! cascades are always solvable.

pub mod cx;
pub mod equations;
pub mod gp;
pub mod graph;
pub mod group;
pub mod hawaiian;
pub mod norms;
pub mod roots;
pub mod vertex;
pub mod witness;

pub use gp::{GPElement, GpError, GraphProduct, PivotForm, Syllable};
pub use graph::{CommutationGraph, GroupFile};
pub use group::Group;
