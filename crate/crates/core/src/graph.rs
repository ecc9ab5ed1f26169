//! Problem instances: a directed multigraph whose edges carry a cost and a
//! resource consumption, the query `(s, t, R)`, and paths over the graph.

use crate::error::{Result, RspError};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub cost: f64,
    pub resource: f64,
}

impl Edge {
    pub fn new(src: VertexId, dst: VertexId, cost: f64, resource: f64) -> Self {
        Edge {
            src,
            dst,
            cost,
            resource,
        }
    }
}

/// Immutable directed multigraph with vertices `0..n`.
///
/// Edges are indexed by their position in [`Graph::edges`]; both an outgoing
/// and an incoming adjacency index are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    outgoing: Vec<Vec<EdgeId>>,
    incoming: Vec<Vec<EdgeId>>,
    dropped_self_loops: usize,
}

impl Graph {
    /// Validates and indexes an edge list. Self-loops are dropped and counted.
    pub fn new(n: usize, edge_list: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(RspError::EmptyGraph);
        }
        let mut edges = Vec::new();
        let mut dropped_self_loops = 0;
        for (idx, e) in edge_list.into_iter().enumerate() {
            for v in [e.src, e.dst] {
                if v >= n {
                    return Err(RspError::VertexOutOfRange { vertex: v, n });
                }
            }
            for (what, value) in [("cost", e.cost), ("resource", e.resource)] {
                if !value.is_finite() || value < 0.0 {
                    return Err(RspError::InvalidWeight {
                        edge: idx,
                        what,
                        value,
                    });
                }
            }
            if e.src == e.dst {
                dropped_self_loops += 1;
                continue;
            }
            edges.push(e);
        }

        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            outgoing[e.src].push(id);
            incoming[e.dst].push(id);
        }
        Ok(Graph {
            n,
            edges,
            outgoing,
            incoming,
            dropped_self_loops,
        })
    }

    /// Convenience constructor from `(src, dst, cost, resource)` tuples.
    pub fn from_tuples(n: usize, edges: &[(VertexId, VertexId, f64, f64)]) -> Result<Self> {
        Graph::new(n, edges.iter().map(|&(s, d, c, r)| Edge::new(s, d, c, r)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[v]
    }

    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(RspError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// True when every edge cost is a whole number.
    pub fn has_integer_costs(&self) -> bool {
        self.first_fractional_cost().is_none()
    }

    pub(crate) fn first_fractional_cost(&self) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.cost.fract() != 0.0)
    }
}

/// A restricted shortest path query: find a cheapest `source -> target` path
/// whose resource sum is at most `bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Query {
    pub source: VertexId,
    pub target: VertexId,
    pub bound: f64,
    /// Added to `bound` in every feasibility comparison. Zero by default.
    pub slack: f64,
}

impl Query {
    pub fn new(source: VertexId, target: VertexId, bound: f64) -> Result<Self> {
        if source == target {
            return Err(RspError::SourceEqualsTarget(source));
        }
        if !bound.is_finite() || bound < 0.0 {
            return Err(RspError::InvalidBound(bound));
        }
        Ok(Query {
            source,
            target,
            bound,
            slack: 0.0,
        })
    }

    pub fn with_slack(mut self, slack: f64) -> Result<Self> {
        if !slack.is_finite() || slack < 0.0 {
            return Err(RspError::InvalidBound(slack));
        }
        self.slack = slack;
        Ok(self)
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        g.check_vertex(self.source)?;
        g.check_vertex(self.target)
    }

    /// Whether a path with this resource consumption satisfies the bound.
    #[inline]
    pub fn admits(&self, resource: f64) -> bool {
        resource <= self.bound + self.slack
    }
}

/// Ordered sequence of edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Path {
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Path { edges }
    }

    pub fn empty() -> Self {
        Path::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex sequence of the path, starting at `start` (used when the path
    /// is empty).
    pub fn vertices(&self, g: &Graph, start: VertexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        match self.edges.first() {
            Some(&e) => out.push(g.edge(e).src),
            None => out.push(start),
        }
        out.extend(self.edges.iter().map(|&e| g.edge(e).dst));
        out
    }

    /// Concatenates two paths. The caller is responsible for chaining.
    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { edges }
    }

    pub fn evaluate(&self, g: &Graph) -> Result<(f64, f64)> {
        evaluate_path(g, self)
    }

    /// Checks that the path is chained and runs from `q.source` to `q.target`.
    pub fn connects(&self, g: &Graph, q: &Query) -> bool {
        if evaluate_path(g, self).is_err() {
            return false;
        }
        match (self.edges.first(), self.edges.last()) {
            (Some(&a), Some(&b)) => g.edge(a).src == q.source && g.edge(b).dst == q.target,
            _ => q.source == q.target,
        }
    }
}

/// Sums cost and resource along a path, summing in path order.
pub fn evaluate_path(g: &Graph, p: &Path) -> Result<(f64, f64)> {
    let mut cost = 0.0;
    let mut resource = 0.0;
    let mut prev: Option<VertexId> = None;
    for (position, &id) in p.edges.iter().enumerate() {
        if id >= g.edge_count() {
            return Err(RspError::BrokenPath { position });
        }
        let e = g.edge(id);
        if prev.is_some_and(|v| v != e.src) {
            return Err(RspError::BrokenPath { position });
        }
        cost += e.cost;
        resource += e.resource;
        prev = Some(e.dst);
    }
    Ok((cost, resource))
}
