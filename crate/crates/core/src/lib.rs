//! Exact minimum s-t cut computation under two restricted-access models:
//! a cut-query oracle with per-query accounting, and a two-party
//! communication simulator with per-bit accounting. Local computation is
//! treated as free in both models; only queries and bits are charged.
//!
//! The crate is organized around the access models:
//!
//! - [`graph`], [`conn`], [`packing`], [`flow`]: shared combinatorial
//!   substrate (mixed graphs, contractions, forest packings, exact
//!   max-flow / min-cut, residual graphs).
//! - [`oracle`]: the sealed cut-query oracle and its derived primitives
//!   (independent-set queries, find-edge, contracted-graph learning,
//!   uniform edge sampling).
//! - [`sparsify`]: cut sparsifiers for both models plus min-cut-value
//!   approximation wrappers.
//! - [`witness`] and [`grow`]: the witness-counting machinery that grows a
//!   large flow subgraph with few queries.
//! - [`rsw`]: the contraction-based mixed-graph min-cut routine shared by
//!   both models through an edge-discovery backend.
//! - [`comm`]: the two-party runtime, its deterministic protocols, and the
//!   end-to-end communication driver.
//! - [`harness`]: generators, baselines, end-to-end drivers, sweeps and
//!   CSV reporting.

pub mod bitset;
pub mod comm;
pub mod conn;
pub mod error;
pub mod flow;
pub mod graph;
pub mod grow;
pub mod harness;
pub mod oracle;
pub mod packing;
pub mod rsw;
pub mod sparsify;
pub mod witness;

pub use error::{Error, Result};
