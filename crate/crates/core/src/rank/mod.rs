//! PageRank and influence-PageRank of a call graph.
//!
//! The Google matrix is `G = alpha * S + (1 - alpha) / N`, where `S` is the
//! column-normalized adjacency with dangling columns replaced by the uniform
//! column. `G` is never stored: [`StochasticOperator`] keeps only the sparse
//! part and the dangling set, and the two rank-one terms are applied inside
//! the matrix-vector product.
//!
//! Popularity ranks nodes by the flow of calls (a surfer at a caller moves
//! to one of its callees). Influence runs the same computation on the
//! reversed graph, so mass flows from callees back to their callers.

mod pagerank;
mod stochastic;

pub use pagerank::{
    apply_google, google_residual, influence_pagerank, pagerank, pagerank_of, rank_decay_fit,
    GoogleParams, RankDirection, RankVector,
};
pub use stochastic::{build_stochastic, LinkDirection, StochasticOperator, Weighting};
