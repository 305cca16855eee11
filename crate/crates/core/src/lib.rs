//! Procedure call networks (PCNs) from C source trees.
//!
//! A PCN has one node per defined procedure and one directed edge per call
//! site, caller to callee. This crate builds PCNs by lexical scanning and
//! characterizes them with the tools used for web graphs:
//!
//! * degree distributions and their power-law exponents ([`graph`]),
//! * PageRank of the Google matrix and the influence ranking obtained by
//!   reversing every link ([`rank`]),
//! * the popularity/influence correlator, joint rank histograms and the set
//!   of procedures that are both popular and influential ([`correlation`]),
//! * the complex eigenvalue spectrum of the Google matrix ([`spectrum`]).
//!
//! Generic directed edge lists go through the same pipeline ([`io`]).
//!
//! ```
//! use pcn::graph::generators::chain;
//! use pcn::rank::{pagerank_of, GoogleParams, LinkDirection, Weighting};
//!
//! let g = chain();
//! let r = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &GoogleParams::default()).unwrap();
//! assert!((r.rho[0] - 1.0 / 2.85).abs() < 1e-10);
//! ```

pub mod correlation;
pub mod error;
pub mod extractor;
pub mod graph;
pub mod io;
pub mod numeric;
pub mod rank;
pub mod spectrum;

pub use error::{Error, Result};
pub use graph::CallGraph;
