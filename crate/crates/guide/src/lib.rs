//! Every chapter of `book/` as a module, so that `cargo test --doc` runs the
//! Rust listings. Shell sessions in the command-line chapter are replayed by
//! the CLI tests instead.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graph-products.md")]
pub mod graph_products {}
#[doc = include_str!("../../../book/src/norms.md")]
pub mod norms {}
#[doc = include_str!("../../../book/src/roots.md")]
pub mod roots {}
#[doc = include_str!("../../../book/src/equations.md")]
pub mod equations {}
#[doc = include_str!("../../../book/src/witnesses.md")]
pub mod witnesses {}
#[doc = include_str!("../../../book/src/hawaiian.md")]
pub mod hawaiian {}
#[doc = include_str!("../../../book/src/counterexample.md")]
pub mod counterexample {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/acceptance.md")]
pub mod acceptance {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
