//! Reference solvers for small instances. Neither shares code with the DP.

use std::collections::VecDeque;

use crate::error::{Result, RspError};
use crate::graph::{EdgeId, Graph, Path, Query, VertexId};

pub const DEFAULT_MAX_VERTICES: usize = 12;
pub const DEFAULT_LABEL_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    Found {
        cost: f64,
        resource: f64,
        path: Path,
    },
    Infeasible,
}

impl OracleOutcome {
    pub fn cost(&self) -> Option<f64> {
        match self {
            OracleOutcome::Found { cost, .. } => Some(*cost),
            OracleOutcome::Infeasible => None,
        }
    }
}

/// Enumerates every simple `s -> t` path by depth-first search and keeps the
/// cheapest one within the resource bound.
pub fn brute_force_opt(g: &Graph, q: &Query, max_n: usize) -> Result<OracleOutcome> {
    q.check(g)?;
    if g.vertex_count() > max_n {
        return Err(RspError::InstanceTooLarge {
            n: g.vertex_count(),
            max: max_n,
        });
    }
    let mut search = Dfs {
        g,
        q,
        on_path: vec![false; g.vertex_count()],
        stack: Vec::new(),
        best: None,
    };
    search.on_path[q.source] = true;
    search.visit(q.source, 0.0, 0.0);
    Ok(match search.best {
        Some((cost, resource, edges)) => OracleOutcome::Found {
            cost,
            resource,
            path: Path::new(edges),
        },
        None => OracleOutcome::Infeasible,
    })
}

struct Dfs<'a> {
    g: &'a Graph,
    q: &'a Query,
    on_path: Vec<bool>,
    stack: Vec<EdgeId>,
    best: Option<(f64, f64, Vec<EdgeId>)>,
}

impl Dfs<'_> {
    fn visit(&mut self, v: VertexId, cost: f64, resource: f64) {
        if v == self.q.target {
            let better = match &self.best {
                None => true,
                Some((c, r, _)) => (cost, resource) < (*c, *r),
            };
            if better {
                self.best = Some((cost, resource, self.stack.clone()));
            }
            return;
        }
        for &e in self.g.outgoing(v) {
            let edge = self.g.edge(e);
            if self.on_path[edge.dst] {
                continue;
            }
            let (c, r) = (cost + edge.cost, resource + edge.resource);
            // weights are nonnegative, so neither quantity can recover later
            if !self.q.admits(r) || self.best.as_ref().is_some_and(|b| c > b.0) {
                continue;
            }
            self.on_path[edge.dst] = true;
            self.stack.push(e);
            self.visit(edge.dst, c, r);
            self.stack.pop();
            self.on_path[edge.dst] = false;
        }
    }
}

/// A `(cost, resource)` label at a vertex.
#[derive(Debug, Clone, Copy)]
pub struct ParetoLabel {
    pub vertex: VertexId,
    pub cost: f64,
    pub resource: f64,
    /// Index of the predecessor label and the edge taken from it.
    pub pred: Option<(usize, EdgeId)>,
}

impl ParetoLabel {
    /// Weak dominance: no worse in both coordinates.
    pub fn dominates(&self, other: &ParetoLabel) -> bool {
        self.cost <= other.cost && self.resource <= other.resource
    }
}

/// Label-correcting bicriteria search keeping, per vertex, a set of mutually
/// nondominated labels within the resource bound.
pub fn pareto_opt(g: &Graph, q: &Query, label_limit: usize) -> Result<OracleOutcome> {
    q.check(g)?;
    let mut arena: Vec<ParetoLabel> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    let mut queue = VecDeque::new();

    arena.push(ParetoLabel {
        vertex: q.source,
        cost: 0.0,
        resource: 0.0,
        pred: None,
    });
    alive.push(true);
    at[q.source].push(0);
    queue.push_back(0);

    while let Some(idx) = queue.pop_front() {
        if !alive[idx] {
            continue;
        }
        let label = arena[idx];
        for &e in g.outgoing(label.vertex) {
            let edge = g.edge(e);
            let cand = ParetoLabel {
                vertex: edge.dst,
                cost: label.cost + edge.cost,
                resource: label.resource + edge.resource,
                pred: Some((idx, e)),
            };
            if !q.admits(cand.resource) {
                continue;
            }
            let set = &mut at[edge.dst];
            if set.iter().any(|&l| arena[l].dominates(&cand)) {
                continue;
            }
            set.retain(|&l| {
                let keep = !cand.dominates(&arena[l]);
                if !keep {
                    alive[l] = false;
                }
                keep
            });
            if arena.len() >= label_limit {
                return Err(RspError::LabelLimitExceeded(label_limit));
            }
            let new_idx = arena.len();
            arena.push(cand);
            alive.push(true);
            set.push(new_idx);
            queue.push_back(new_idx);
        }
    }

    let best = at[q.target].iter().copied().min_by(|&a, &b| {
        (arena[a].cost, arena[a].resource)
            .partial_cmp(&(arena[b].cost, arena[b].resource))
            .expect("finite labels")
    });
    Ok(match best {
        None => OracleOutcome::Infeasible,
        Some(idx) => {
            let mut edges = Vec::new();
            let mut cur = idx;
            while let Some((prev, e)) = arena[cur].pred {
                edges.push(e);
                cur = prev;
            }
            edges.reverse();
            OracleOutcome::Found {
                cost: arena[idx].cost,
                resource: arena[idx].resource,
                path: Path::new(edges),
            }
        }
    })
}
