use serde::{Deserialize, Serialize};

use super::CallGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// Whether repeated calls to the same callee count once or every time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Counting {
    Multiplicity,
    Distinct,
}

/// Per-node degree, indexed by node id.
pub fn degree_sequence(g: &CallGraph, direction: Direction, counting: Counting) -> Vec<u64> {
    let mut deg = vec![0u64; g.node_count()];
    for e in g.edges() {
        let node = match direction {
            Direction::Out => e.src,
            Direction::In => e.dst,
        };
        deg[node] += match counting {
            Counting::Multiplicity => e.multiplicity,
            Counting::Distinct => 1,
        };
    }
    deg
}
