//! A small hand-checkable instance with a zero-cost cycle `b -> c -> d -> b`.
//!
//! ```text
//!   s --(2,1)--> a --(1,5)--> b --(0,2)--> c --(0,1)--> d --(1,6)--> t
//!   s --(1,8)--> b            a --(2,7)--> d            d --(0,2)--> b
//! ```
//!
//! Edge labels are `(cost, resource)`.

use crate::graph::{Graph, Path, VertexId};

pub const S: VertexId = 0;
pub const A: VertexId = 1;
pub const B: VertexId = 2;
pub const C: VertexId = 3;
pub const D: VertexId = 4;
pub const T: VertexId = 5;

pub const ZERO_COST_CYCLE_EDGES: [(VertexId, VertexId, f64, f64); 8] = [
    (S, A, 2.0, 1.0),
    (A, B, 1.0, 5.0),
    (S, B, 1.0, 8.0),
    (A, D, 2.0, 7.0),
    (B, C, 0.0, 2.0),
    (C, D, 0.0, 1.0),
    (D, B, 0.0, 2.0),
    (D, T, 1.0, 6.0),
];

pub fn zero_cost_cycle_graph() -> Graph {
    Graph::from_tuples(6, &ZERO_COST_CYCLE_EDGES).expect("fixture is valid")
}

/// Builds the path visiting `vertices` in order, taking the first edge found
/// between consecutive vertices. Panics if some hop has no edge.
pub fn path_through(g: &Graph, vertices: &[VertexId]) -> Path {
    let edges = vertices
        .windows(2)
        .map(|w| {
            *g.outgoing(w[0])
                .iter()
                .find(|&&e| g.edge(e).dst == w[1])
                .unwrap_or_else(|| panic!("no edge {} -> {}", w[0], w[1]))
        })
        .collect();
    Path::new(edges)
}
