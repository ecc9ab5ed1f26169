//! Single-source shortest paths over one of the two edge weights, restricted
//! to a filtered edge set.
//!
//! The multi-seed form is the workhorse: every vertex may start with an
//! initial distance, which is equivalent to a virtual super source joined to
//! each seeded vertex by an edge of that weight. The DP uses it once per row
//! over the zero-cost subgraph.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, RspError};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Cost,
    Resource,
}

impl Weight {
    #[inline]
    fn of(self, g: &Graph, e: EdgeId) -> f64 {
        let edge = g.edge(e);
        match self {
            Weight::Cost => edge.cost,
            Weight::Resource => edge.resource,
        }
    }
}

/// Restricts a run to a subset of edges.
pub trait EdgeFilter {
    fn admits(&self, e: EdgeId) -> bool;
}

impl<F: Fn(EdgeId) -> bool> EdgeFilter for F {
    #[inline]
    fn admits(&self, e: EdgeId) -> bool {
        self(e)
    }
}

/// Admits every edge.
pub struct AllEdges;

impl EdgeFilter for AllEdges {
    #[inline]
    fn admits(&self, _: EdgeId) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parent {
    /// Not reached.
    None,
    /// Distance comes from the vertex's own seed (or it is the source).
    Seed,
    /// Reached through this edge.
    Edge(EdgeId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SsspResult {
    /// `None` marks an unreachable vertex.
    pub dist: Vec<Option<f64>>,
    pub parent: Vec<Parent>,
    /// Number of admitted edges relaxed.
    pub relaxations: u64,
}

impl SsspResult {
    /// Edge ids of the tree path ending at `v`, in path order.
    pub fn tree_path(&self, g: &Graph, v: VertexId) -> Option<Vec<EdgeId>> {
        self.dist[v]?;
        let mut edges = Vec::new();
        let mut cur = v;
        loop {
            match self.parent[cur] {
                Parent::Seed => break,
                Parent::Edge(e) => {
                    edges.push(e);
                    cur = g.edge(e).src;
                }
                Parent::None => return None,
            }
        }
        edges.reverse();
        Some(edges)
    }
}

/// A pluggable SSSP algorithm. Weights are nonnegative, so any correct
/// algorithm for that setting (planar, bucket queues, ...) fits here.
pub trait SsspEngine {
    /// `seeds[v]` is the initial distance of `v`, `None` if unseeded. Seeds
    /// are assumed nonnegative.
    fn run(
        &self,
        g: &Graph,
        weight: Weight,
        seeds: &[Option<f64>],
        filter: &dyn EdgeFilter,
    ) -> SsspResult;
}

/// Dijkstra's algorithm with a binary heap and lazy deletion.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dijkstra;

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl SsspEngine for Dijkstra {
    fn run(
        &self,
        g: &Graph,
        weight: Weight,
        seeds: &[Option<f64>],
        filter: &dyn EdgeFilter,
    ) -> SsspResult {
        let n = g.vertex_count();
        let mut dist = seeds.to_vec();
        let mut parent: Vec<Parent> = seeds
            .iter()
            .map(|d| {
                if d.is_some() {
                    Parent::Seed
                } else {
                    Parent::None
                }
            })
            .collect();
        let mut settled = vec![false; n];
        let mut relaxations = 0;

        let mut heap: BinaryHeap<HeapEntry> = dist
            .iter()
            .enumerate()
            .filter_map(|(vertex, d)| d.map(|dist| HeapEntry { dist, vertex }))
            .collect();

        while let Some(HeapEntry {
            dist: du,
            vertex: u,
        }) = heap.pop()
        {
            if settled[u] {
                continue;
            }
            settled[u] = true;
            for &e in g.outgoing(u) {
                if !filter.admits(e) {
                    continue;
                }
                relaxations += 1;
                let v = g.edge(e).dst;
                if settled[v] {
                    continue;
                }
                let cand = du + weight.of(g, e);
                if dist[v].is_none_or(|dv| cand < dv) {
                    dist[v] = Some(cand);
                    parent[v] = Parent::Edge(e);
                    heap.push(HeapEntry {
                        dist: cand,
                        vertex: v,
                    });
                }
            }
        }

        SsspResult {
            dist,
            parent,
            relaxations,
        }
    }
}

/// Shortest paths from a single real source.
pub fn sssp(
    g: &Graph,
    weight: Weight,
    source: VertexId,
    filter: &dyn EdgeFilter,
) -> Result<SsspResult> {
    g.check_vertex(source)?;
    let mut seeds = vec![None; g.vertex_count()];
    seeds[source] = Some(0.0);
    Ok(Dijkstra.run(g, weight, &seeds, filter))
}

/// Resource-weighted shortest paths from a virtual source joined to every
/// seeded vertex by an edge of the seed's weight.
pub fn sssp_super_source(
    g: &Graph,
    seeds: &[Option<f64>],
    filter: &dyn EdgeFilter,
) -> Result<SsspResult> {
    check_seeds(g, seeds)?;
    Ok(Dijkstra.run(g, Weight::Resource, seeds, filter))
}

fn check_seeds(g: &Graph, seeds: &[Option<f64>]) -> Result<()> {
    if seeds.len() != g.vertex_count() {
        return Err(RspError::SeedLength {
            got: seeds.len(),
            expected: g.vertex_count(),
        });
    }
    for (vertex, s) in seeds.iter().enumerate() {
        if let Some(value) = *s {
            if value.is_nan() || value < 0.0 {
                return Err(RspError::InvalidSeed { vertex, value });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, A, B, C, D, S, T};
    use crate::graph::Edge;
    use proptest::prelude::*;

    fn zero_cost(g: &Graph) -> impl Fn(EdgeId) -> bool + '_ {
        move |e| g.edge(e).cost == 0.0
    }

    #[test]
    fn resource_distances_on_example() {
        let g = fixtures::zero_cost_cycle_graph();
        let res = sssp(&g, Weight::Resource, S, &AllEdges).unwrap();
        assert_eq!(res.dist[T], Some(14.0));
        let path = res.tree_path(&g, T).unwrap();
        assert_eq!(path, fixtures::path_through(&g, &[S, A, D, T]).edges);
    }

    #[test]
    fn isolated_source() {
        let g = fixtures::zero_cost_cycle_graph();
        let res = sssp(&g, Weight::Resource, S, &|_: EdgeId| false).unwrap();
        assert_eq!(res.dist, vec![Some(0.0), None, None, None, None, None]);
        assert_eq!(res.parent[S], Parent::Seed);
    }

    #[test]
    fn zero_cost_subgraph_from_b() {
        let g = fixtures::zero_cost_cycle_graph();
        let res = sssp(&g, Weight::Resource, B, &zero_cost(&g)).unwrap();
        assert_eq!(res.dist[D], Some(3.0));
        assert_eq!(res.dist[S], None);
    }

    #[test]
    fn super_source_row_four_seeds() {
        let g = fixtures::zero_cost_cycle_graph();
        let seeds = vec![Some(0.0), Some(1.0), Some(6.0), None, Some(8.0), Some(15.0)];
        let res = sssp_super_source(&g, &seeds, &zero_cost(&g)).unwrap();
        assert_eq!(
            res.dist,
            vec![
                Some(0.0),
                Some(1.0),
                Some(6.0),
                Some(8.0),
                Some(8.0),
                Some(15.0)
            ]
        );
        assert_eq!(res.parent[C], Parent::Edge(4));
        assert_eq!(res.parent[D], Parent::Seed);
    }

    #[test]
    fn super_source_single_seed() {
        let g = fixtures::zero_cost_cycle_graph();
        let mut seeds = vec![None; 6];
        seeds[B] = Some(8.0);
        let res = sssp_super_source(&g, &seeds, &zero_cost(&g)).unwrap();
        assert_eq!(
            res.dist,
            vec![None, None, Some(8.0), Some(10.0), Some(11.0), None]
        );

        let mut lone = vec![None; 6];
        lone[A] = Some(0.0);
        let res = sssp_super_source(&g, &lone, &|_: EdgeId| false).unwrap();
        assert_eq!(res.dist, vec![None, Some(0.0), None, None, None, None]);
    }

    #[test]
    fn no_seeds_reach_nothing() {
        let g = fixtures::zero_cost_cycle_graph();
        let res = sssp_super_source(&g, &[None; 6], &AllEdges).unwrap();
        assert!(res.dist.iter().all(Option::is_none));
    }

    #[test]
    fn rejects_bad_seeds() {
        let g = fixtures::zero_cost_cycle_graph();
        assert!(sssp_super_source(&g, &[None; 3], &AllEdges).is_err());
        let mut seeds = vec![None; 6];
        seeds[0] = Some(-1.0);
        assert!(sssp_super_source(&g, &seeds, &AllEdges).is_err());
        assert!(sssp(&g, Weight::Cost, 6, &AllEdges).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..9).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, 0u32..6, 0u32..20), 0..3 * n).prop_map(move |raw| {
                Graph::new(
                    n,
                    raw.into_iter()
                        .map(|(s, d, c, r)| Edge::new(s, d, c as f64, r as f64 * 0.5)),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn distances_are_a_relaxation_fixed_point(g in arb_graph(), mask in any::<u64>()) {
            let filter = move |e: EdgeId| mask >> (e % 64) & 1 == 1;
            let res = sssp(&g, Weight::Resource, 0, &filter).unwrap();
            prop_assert_eq!(res.dist[0], Some(0.0));
            for (id, e) in g.edges().iter().enumerate() {
                if !filter(id) { continue; }
                if let Some(du) = res.dist[e.src] {
                    let dv = res.dist[e.dst];
                    prop_assert!(dv.is_some_and(|dv| dv <= du + e.resource));
                }
            }
            // every finite distance is witnessed by its tree path
            for v in 0..g.vertex_count() {
                if let Some(d) = res.dist[v] {
                    let path = res.tree_path(&g, v).unwrap();
                    let sum: f64 = path.iter().map(|&e| g.edge(e).resource).sum();
                    prop_assert_eq!(sum, d);
                }
            }
        }

        #[test]
        fn super_source_matches_augmented_graph(
            g in arb_graph(),
            raw_seeds in prop::collection::vec(prop::option::of(0u32..30), 9),
        ) {
            let n = g.vertex_count();
            let seeds: Vec<Option<f64>> = raw_seeds[..n].iter().map(|s| s.map(f64::from)).collect();
            let res = sssp_super_source(&g, &seeds, &AllEdges).unwrap();

            // explicit virtual vertex n with one edge per seed
            let mut edges = g.edges().to_vec();
            for (v, s) in seeds.iter().enumerate() {
                if let Some(w) = s {
                    edges.push(Edge::new(n, v, 0.0, *w));
                }
            }
            let aug = Graph::new(n + 1, edges).unwrap();
            let expected = sssp(&aug, Weight::Resource, n, &AllEdges).unwrap();
            prop_assert_eq!(&res.dist[..], &expected.dist[..n]);
        }
    }
}
