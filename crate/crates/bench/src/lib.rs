//! Instances shared by the criterion benchmarks.

use rsp_core::generate::interesting_query;
use rsp_core::{Graph, GraphClass, Query, WeightSpec};

/// A generated instance with a constraining query from vertex 0 to the last
/// vertex. Panics if the generator does not reach the target, which the
/// built-in classes never do.
pub fn instance(class: GraphClass, n: usize, seed: u64, spec: &WeightSpec) -> (Graph, Query) {
    let g = class
        .generate(n, seed, spec)
        .expect("valid generator parameters");
    let t = g.vertex_count() - 1;
    let q = interesting_query(&g, 0, t, seed)
        .expect("valid query")
        .expect("generated graphs reach every vertex from 0");
    (g, q)
}

pub fn real_weights() -> WeightSpec {
    WeightSpec {
        zero_cost_fraction: 0.2,
        ..WeightSpec::default()
    }
}
