//! Seeded instance generators for the graph classes of interest: general
//! digraphs, DAGs, planar grids and undirected graphs with integer resources.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a `(parameters, seed)` pair always yields the same
//! graph on every platform.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RspError};
use crate::graph::{Edge, Graph, Query, VertexId};
use crate::sssp::{sssp, AllEdges, Weight};

/// How edge weights are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpec {
    /// Costs are uniform in `[0, cost_max]`, or in `1..=cost_max` when
    /// `integer_costs` is set.
    pub cost_max: f64,
    /// Resources are uniform in `[0, res_max]`, or in `1..=res_max` when
    /// `integer_resources` is set.
    pub res_max: f64,
    /// Exactly `floor(fraction * m)` edges get cost 0.
    pub zero_cost_fraction: f64,
    pub integer_costs: bool,
    pub integer_resources: bool,
}

impl Default for WeightSpec {
    fn default() -> Self {
        WeightSpec {
            cost_max: 10.0,
            res_max: 10.0,
            zero_cost_fraction: 0.0,
            integer_costs: false,
            integer_resources: false,
        }
    }
}

impl WeightSpec {
    pub fn integer(cost_max: u32, res_max: u32, zero_cost_fraction: f64) -> Self {
        WeightSpec {
            cost_max: cost_max as f64,
            res_max: res_max as f64,
            zero_cost_fraction,
            integer_costs: true,
            integer_resources: true,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(RspError::InvalidGenerator(msg.to_string()));
        if !(0.0..=1.0).contains(&self.zero_cost_fraction) {
            return bad("zero_cost_fraction must lie in [0, 1]");
        }
        if !(self.cost_max.is_finite() && self.cost_max >= 0.0)
            || !(self.res_max.is_finite() && self.res_max >= 0.0)
        {
            return bad("weight maxima must be finite and nonnegative");
        }
        if self.integer_costs && self.cost_max < 1.0 {
            return bad("integer costs need cost_max >= 1");
        }
        if self.integer_resources && self.res_max < 1.0 {
            return bad("integer resources need res_max >= 1");
        }
        Ok(())
    }

    fn cost(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.integer_costs {
            rng.random_range(1..=self.cost_max as u64) as f64
        } else {
            rng.random_range(0.0..=self.cost_max)
        }
    }

    fn resource(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.integer_resources {
            rng.random_range(1..=self.res_max as u64) as f64
        } else {
            rng.random_range(0.0..=self.res_max)
        }
    }

    /// Draws `count` weight pairs, exactly `floor(fraction * count)` of them
    /// with cost zero.
    fn draw(&self, count: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
        let mut weights: Vec<(f64, f64)> = (0..count)
            .map(|_| (self.cost(rng), self.resource(rng)))
            .collect();
        let zeros = (self.zero_cost_fraction * count as f64).floor() as usize;
        for idx in sample(rng, count, zeros.min(count)) {
            weights[idx].0 = 0.0;
        }
        weights
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_counts(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(RspError::InvalidGenerator("n must be positive".into()));
    }
    if m + 1 < n {
        return Err(RspError::InvalidGenerator(format!(
            "m = {m} is too small to connect n = {n} vertices"
        )));
    }
    if n == 1 && m > 0 {
        return Err(RspError::InvalidGenerator(
            "a single vertex admits no edges".into(),
        ));
    }
    Ok(())
}

fn weighted(pairs: Vec<(VertexId, VertexId)>, weights: Vec<(f64, f64)>) -> Vec<Edge> {
    pairs
        .into_iter()
        .zip(weights)
        .map(|((s, d), (c, r))| Edge::new(s, d, c, r))
        .collect()
}

fn distinct_pair(n: usize, rng: &mut ChaCha8Rng) -> (VertexId, VertexId) {
    let u = rng.random_range(0..n);
    let mut v = rng.random_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// Weakly connected digraph: a random arborescence rooted at vertex 0 plus
/// `m - (n - 1)` random arcs (parallel arcs allowed).
pub fn gen_general(n: usize, m: usize, seed: u64, spec: &WeightSpec) -> Result<Graph> {
    check_counts(n, m)?;
    spec.validate()?;
    let mut rng = rng(seed);
    let mut order: Vec<VertexId> = (1..n).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    order.insert(0, 0);

    let mut pairs = Vec::with_capacity(m);
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        pairs.push((parent, order[k]));
    }
    while pairs.len() < m {
        pairs.push(distinct_pair(n, &mut rng));
    }
    let weights = spec.draw(m, &mut rng);
    Graph::new(n, weighted(pairs, weights))
}

/// Acyclic digraph in which every arc goes from a lower to a higher id.
/// Every vertex is reachable from vertex 0.
pub fn gen_dag(n: usize, m: usize, seed: u64, spec: &WeightSpec) -> Result<Graph> {
    check_counts(n, m)?;
    spec.validate()?;
    let mut rng = rng(seed);
    let mut pairs = Vec::with_capacity(m);
    for k in 1..n {
        pairs.push((rng.random_range(0..k), k));
    }
    while pairs.len() < m {
        let (u, v) = distinct_pair(n, &mut rng);
        pairs.push((u.min(v), u.max(v)));
    }
    let weights = spec.draw(m, &mut rng);
    Graph::new(n, weighted(pairs, weights))
}

/// `rows x cols` grid; every pair of orthogonal neighbours is joined by two
/// opposite arcs with independent weights. Vertex `(r, c)` has id
/// `r * cols + c`.
pub fn gen_grid_planar(rows: usize, cols: usize, seed: u64, spec: &WeightSpec) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(RspError::InvalidGenerator(
            "grid dimensions must be positive".into(),
        ));
    }
    spec.validate()?;
    let mut rng = rng(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
                pairs.push((id(r, c + 1), id(r, c)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
                pairs.push((id(r + 1, c), id(r, c)));
            }
        }
    }
    let weights = spec.draw(pairs.len(), &mut rng);
    Graph::new(rows * cols, weighted(pairs, weights))
}

/// Connected undirected graph with `m` edges, each emitted as the arcs
/// `2k` and `2k + 1` in opposite directions with equal weights. Resources are
/// integers in `1..=res_max`.
pub fn gen_undirected_int_res(
    n: usize,
    m: usize,
    seed: u64,
    res_max: u32,
    spec: &WeightSpec,
) -> Result<Graph> {
    check_counts(n, m)?;
    let spec = WeightSpec {
        res_max: res_max as f64,
        integer_resources: true,
        ..*spec
    };
    spec.validate()?;
    let mut rng = rng(seed);
    let mut pairs = Vec::with_capacity(m);
    for k in 1..n {
        pairs.push((rng.random_range(0..k), k));
    }
    while pairs.len() < m {
        pairs.push(distinct_pair(n, &mut rng));
    }
    let weights = spec.draw(m, &mut rng);
    let arcs = pairs
        .into_iter()
        .zip(weights)
        .flat_map(|((u, v), (c, r))| [Edge::new(u, v, c, r), Edge::new(v, u, c, r)]);
    Graph::new(n, arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    General,
    Dag,
    Grid,
    UndirectedIntRes,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [
        GraphClass::General,
        GraphClass::Dag,
        GraphClass::Grid,
        GraphClass::UndirectedIntRes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::General => "general",
            GraphClass::Dag => "dag",
            GraphClass::Grid => "grid",
            GraphClass::UndirectedIntRes => "undirected",
        }
    }

    /// Generates an instance of roughly `n` vertices with `m` in `Theta(n)`:
    /// `3n` arcs for general graphs and DAGs, `2n` undirected edges, and the
    /// largest `r x c` grid with `r = floor(sqrt n)`, `c = floor(n / r)`.
    pub fn generate(self, n: usize, seed: u64, spec: &WeightSpec) -> Result<Graph> {
        let m = 3 * n.max(1) - 2;
        match self {
            GraphClass::General => gen_general(n, m.max(n - 1), seed, spec),
            GraphClass::Dag => gen_dag(n, m.max(n - 1), seed, spec),
            GraphClass::Grid => {
                let rows = (n as f64).sqrt().floor().max(1.0) as usize;
                gen_grid_planar(rows, (n / rows).max(1), seed, spec)
            }
            GraphClass::UndirectedIntRes => {
                let res_max = spec.res_max.max(1.0) as u32;
                gen_undirected_int_res(n, 2 * n - 1, seed, res_max, spec)
            }
        }
    }
}

impl std::str::FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                format!("unknown class `{s}` (expected general, dag, grid or undirected)")
            })
    }
}

/// A query from `source` to `target` whose bound lies between the least
/// possible resource and the resource of a cheapest path, so that the bound
/// actually constrains the answer. `None` if `target` is unreachable.
pub fn interesting_query(
    g: &Graph,
    source: VertexId,
    target: VertexId,
    seed: u64,
) -> Result<Option<Query>> {
    let by_resource = sssp(g, Weight::Resource, source, &AllEdges)?;
    let Some(r_min) = by_resource.dist[target] else {
        return Ok(None);
    };
    let by_cost = sssp(g, Weight::Cost, source, &AllEdges)?;
    let cheapest = by_cost
        .tree_path(g, target)
        .expect("reachable under one weight means reachable under the other");
    let r_cheap: f64 = cheapest.iter().map(|&e| g.edge(e).resource).sum();
    let u: f64 = rng(seed).random_range(0.0..=1.0);
    let bound = r_min + u * (r_cheap - r_min).max(0.0);
    Query::new(source, target, bound).map(Some)
}
