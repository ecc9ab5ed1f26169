//! Exact pseudopolynomial solver for integer costs.
//!
//! Row `i` of the table holds, for every vertex `v`, the least resource of an
//! `s -> v` path whose (integer) cost is at most `i`. A row is filled in two
//! phases:
//!
//! 1. *Entry values*: for every `v != s`, the best `row[i - c(e)][u] + r(e)`
//!    over incoming edges `e = (u, v)` of positive cost. Back rows with a
//!    negative index count as unreachable.
//! 2. *Zero-cost closure*: a multi-seed SSSP over the zero-cost edges, seeded
//!    with the entry values and with `s` at zero.
//!
//! When no edge has zero cost, phase 2 cannot change anything and is skipped
//! (unless disabled through [`DpOptions`]). The solver stops at the first row
//! whose target entry satisfies the resource bound, so it computes
//! `min(C_opt, budget) + 1` rows.

use crate::error::{Result, RspError};
use crate::graph::{EdgeId, Path, Query, VertexId};
use crate::scaling::ScaledGraph;
use crate::sssp::{Dijkstra, Parent, SsspEngine, Weight};

/// How a table entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pred {
    Unreached,
    /// The source itself, reached by the empty path.
    Source,
    /// Last edge has positive cost; the prefix ends at `from` in row `back_row`.
    CostEdge {
        edge: u32,
        from: u32,
        back_row: u32,
    },
    /// Last edge has zero cost; the prefix ends at `from` in the same row.
    ZeroEdge {
        edge: u32,
        from: u32,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct DpOptions {
    /// Skip the zero-cost SSSP when the scaled graph has no zero-cost edge.
    pub skip_empty_zero_subgraph: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            skip_empty_zero_subgraph: true,
        }
    }
}

/// Operation counters for one or more DP runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    pub rows: u64,
    /// Entry-value scans plus SSSP edge relaxations.
    pub relaxations: u64,
}

impl std::ops::AddAssign for DpStats {
    fn add_assign(&mut self, rhs: Self) {
        self.rows += rhs.rows;
        self.relaxations += rhs.relaxations;
    }
}

#[derive(Debug, Clone)]
pub struct DpTable {
    n: usize,
    source: VertexId,
    rows: Vec<Vec<Option<f64>>>,
    preds: Vec<Vec<Pred>>,
    relaxations: u64,
}

impl DpTable {
    pub fn new(n: usize, source: VertexId) -> Self {
        DpTable {
            n,
            source,
            rows: Vec::new(),
            preds: Vec::new(),
            relaxations: 0,
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn rows_computed(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[Option<f64>] {
        &self.rows[i]
    }

    pub fn pred(&self, v: VertexId, i: usize) -> Pred {
        self.preds[i][v]
    }

    pub fn stats(&self) -> DpStats {
        DpStats {
            rows: self.rows.len() as u64,
            relaxations: self.relaxations,
        }
    }

    /// Computes the next row (index [`Self::rows_computed`]) with the default
    /// SSSP engine.
    pub fn compute_row(&mut self, g: &ScaledGraph<'_>) -> &[Option<f64>] {
        self.compute_row_with(g, &Dijkstra, DpOptions::default())
    }

    pub fn compute_row_with(
        &mut self,
        g: &ScaledGraph<'_>,
        engine: &dyn SsspEngine,
        opts: DpOptions,
    ) -> &[Option<f64>] {
        let base = g.base();
        debug_assert_eq!(base.vertex_count(), self.n);
        let i = self.rows.len();
        let s = self.source;

        let mut entry = vec![None; self.n];
        let mut entry_pred = vec![Pred::Unreached; self.n];
        entry[s] = Some(0.0);
        entry_pred[s] = Pred::Source;

        for v in (0..self.n).filter(|&v| v != s) {
            for &e in base.incoming(v) {
                let c = g.cost(e);
                if c == 0 || c > i as u64 {
                    continue;
                }
                self.relaxations += 1;
                let back_row = i - c as usize;
                let edge = base.edge(e);
                let Some(prefix) = self.rows[back_row][edge.src] else {
                    continue;
                };
                let cand = prefix + edge.resource;
                if entry[v].is_none_or(|cur| cand < cur) {
                    entry[v] = Some(cand);
                    entry_pred[v] = Pred::CostEdge {
                        edge: e as u32,
                        from: edge.src as u32,
                        back_row: back_row as u32,
                    };
                }
            }
        }

        let (row, preds) = if opts.skip_empty_zero_subgraph && !g.has_zero_cost_edges() {
            (entry, entry_pred)
        } else {
            let zero_only = |e: EdgeId| g.cost(e) == 0;
            let res = engine.run(base, Weight::Resource, &entry, &zero_only);
            self.relaxations += res.relaxations;
            let preds = res
                .parent
                .iter()
                .enumerate()
                .map(|(v, p)| match *p {
                    Parent::None => Pred::Unreached,
                    Parent::Seed => entry_pred[v],
                    Parent::Edge(e) => Pred::ZeroEdge {
                        edge: e as u32,
                        from: base.edge(e).src as u32,
                    },
                })
                .collect();
            (res.dist, preds)
        };

        if let Some(prev) = self.rows.last() {
            debug_assert!(
                row.iter()
                    .zip(prev)
                    .all(|(cur, old)| old.is_none_or(|o| cur.is_some_and(|c| c <= o))),
                "row {i} is not monotone"
            );
        }
        self.rows.push(row);
        self.preds.push(preds);
        &self.rows[i]
    }

    /// Traces the path behind entry `(t, i)` back to the source.
    pub fn reconstruct_path(&self, t: VertexId, i: usize) -> Result<Path> {
        if i >= self.rows.len() || t >= self.n || self.rows[i][t].is_none() {
            return Err(RspError::UnreachableEntry { vertex: t, row: i });
        }
        let mut edges = Vec::new();
        let (mut v, mut row) = (t, i);
        // each step either lowers the row or walks one edge of an SSSP tree
        let limit = self.n * (i + 1);
        loop {
            match self.preds[row][v] {
                Pred::Source => break,
                Pred::CostEdge {
                    edge,
                    from,
                    back_row,
                } => {
                    edges.push(edge as EdgeId);
                    v = from as VertexId;
                    row = back_row as usize;
                }
                Pred::ZeroEdge { edge, from } => {
                    edges.push(edge as EdgeId);
                    v = from as VertexId;
                }
                Pred::Unreached => {
                    return Err(RspError::Contract(format!(
                        "predecessor chain of ({t}, {i}) hits an unreached entry"
                    )))
                }
            }
            if edges.len() > limit {
                return Err(RspError::Contract(format!(
                    "predecessor chain of ({t}, {i}) does not terminate"
                )));
            }
        }
        edges.reverse();
        Ok(Path::new(edges))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome {
    /// Optimal scaled cost and a path attaining it.
    Found { cost: u64, path: Path },
    /// The optimum exceeds the budget (or the instance is infeasible).
    BudgetExceeded,
}

impl ExactOutcome {
    pub fn cost(&self) -> Option<u64> {
        match self {
            ExactOutcome::Found { cost, .. } => Some(*cost),
            ExactOutcome::BudgetExceeded => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExactRun {
    pub outcome: ExactOutcome,
    pub stats: DpStats,
    pub table: DpTable,
}

/// Solves the query exactly on integer costs if the optimum is at most
/// `budget`.
pub fn exact_rsp(g: &ScaledGraph<'_>, q: &Query, budget: u64) -> Result<ExactRun> {
    exact_rsp_with(g, q, budget, &Dijkstra, DpOptions::default())
}

pub fn exact_rsp_with(
    g: &ScaledGraph<'_>,
    q: &Query,
    budget: u64,
    engine: &dyn SsspEngine,
    opts: DpOptions,
) -> Result<ExactRun> {
    let base = g.base();
    q.check(base)?;
    let mut table = DpTable::new(base.vertex_count(), q.source);
    let mut i: u64 = 0;
    let outcome = loop {
        let row = table.compute_row_with(g, engine, opts);
        if row[q.target].is_some_and(|r| q.admits(r)) {
            let path = table.reconstruct_path(q.target, i as usize)?;
            break ExactOutcome::Found { cost: i, path };
        }
        if i == budget {
            break ExactOutcome::BudgetExceeded;
        }
        i += 1;
    };
    let stats = table.stats();
    Ok(ExactRun {
        outcome,
        stats,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, A, B, C, D, S, T};
    use crate::graph::{evaluate_path, Edge, Graph};
    use crate::scaling::{scale, Rounding};
    use proptest::prelude::*;

    const X: Option<f64> = None;

    fn row(vals: [Option<f64>; 6]) -> Vec<Option<f64>> {
        vals.to_vec()
    }

    fn example_table(rows: usize) -> DpTable {
        let g = fixtures::zero_cost_cycle_graph();
        let sg = ScaledGraph::integral(&g).unwrap();
        let mut table = DpTable::new(6, S);
        for _ in 0..rows {
            table.compute_row(&sg);
        }
        table
    }

    #[test]
    fn example_rows() {
        let table = example_table(5);
        let f = Some;
        assert_eq!(table.row(0), row([f(0.0), X, X, X, X, X]));
        assert_eq!(table.row(1), row([f(0.0), X, f(8.0), f(10.0), f(11.0), X]));
        assert_eq!(
            table.row(2),
            row([f(0.0), f(1.0), f(8.0), f(10.0), f(11.0), f(17.0)])
        );
        assert_eq!(
            table.row(3),
            row([f(0.0), f(1.0), f(6.0), f(8.0), f(9.0), f(17.0)])
        );
        assert_eq!(
            table.row(4),
            row([f(0.0), f(1.0), f(6.0), f(8.0), f(8.0), f(15.0)])
        );
    }

    #[test]
    fn example_predecessors() {
        let table = example_table(5);
        // row 4: d is entered from a (cost 2) using row 2, c through the zero edge b->c
        assert_eq!(
            table.pred(D, 4),
            Pred::CostEdge {
                edge: 3,
                from: A as u32,
                back_row: 2
            }
        );
        assert_eq!(
            table.pred(C, 4),
            Pred::ZeroEdge {
                edge: 4,
                from: B as u32
            }
        );
        assert_eq!(table.pred(S, 0), Pred::Source);
    }

    #[test]
    fn reconstructs_example_paths() {
        let g = fixtures::zero_cost_cycle_graph();
        let table = example_table(5);
        let p4 = table.reconstruct_path(T, 4).unwrap();
        assert_eq!(p4, fixtures::path_through(&g, &[S, A, B, C, D, T]));
        assert_eq!(evaluate_path(&g, &p4).unwrap().1, 15.0);
        let p2 = table.reconstruct_path(T, 2).unwrap();
        assert_eq!(p2, fixtures::path_through(&g, &[S, B, C, D, T]));
        assert_eq!(table.reconstruct_path(S, 0).unwrap(), Path::empty());
        assert!(matches!(
            table.reconstruct_path(T, 1),
            Err(RspError::UnreachableEntry { .. })
        ));
    }

    fn solve_example(bound: f64, budget: u64) -> ExactRun {
        let g = fixtures::zero_cost_cycle_graph();
        let sg = ScaledGraph::integral(&g).unwrap();
        exact_rsp(&sg, &Query::new(S, T, bound).unwrap(), budget).unwrap()
    }

    #[test]
    fn example_solves() {
        let g = fixtures::zero_cost_cycle_graph();
        let run = solve_example(15.0, 10);
        assert_eq!(run.outcome.cost(), Some(4));
        assert_eq!(run.stats.rows, 5);
        let ExactOutcome::Found { path, .. } = run.outcome else {
            unreachable!()
        };
        assert_eq!(path.evaluate(&g).unwrap(), (4.0, 15.0));

        let run = solve_example(17.0, 10);
        assert_eq!(run.outcome.cost(), Some(2));
        assert_eq!(run.stats.rows, 3);

        let run = solve_example(15.0, 3);
        assert_eq!(run.outcome, ExactOutcome::BudgetExceeded);
        assert_eq!(run.stats.rows, 4);

        for b in [0, 5, 30] {
            assert_eq!(solve_example(0.0, b).outcome, ExactOutcome::BudgetExceeded);
        }
    }

    #[test]
    fn zero_budget_computes_one_row() {
        let run = solve_example(100.0, 0);
        assert_eq!(run.outcome, ExactOutcome::BudgetExceeded);
        assert_eq!(run.stats.rows, 1);
    }

    #[test]
    fn zero_cost_path_found_in_row_zero() {
        let g =
            Graph::from_tuples(3, &[(0, 1, 0.0, 1.0), (1, 2, 0.0, 1.0), (0, 2, 3.0, 0.5)]).unwrap();
        let sg = ScaledGraph::integral(&g).unwrap();
        let run = exact_rsp(&sg, &Query::new(0, 2, 2.0).unwrap(), 10).unwrap();
        assert_eq!(run.outcome.cost(), Some(0));
        let run = exact_rsp(&sg, &Query::new(0, 2, 1.0).unwrap(), 10).unwrap();
        assert_eq!(run.outcome.cost(), Some(3));
    }

    fn arb_instance(positive: bool) -> impl Strategy<Value = Graph> {
        let min_cost = if positive { 1u32 } else { 0 };
        (2usize..8).prop_flat_map(move |n| {
            prop::collection::vec((0..n, 0..n, min_cost..5, 0u32..10), 1..3 * n).prop_map(
                move |raw| {
                    Graph::new(
                        n,
                        raw.into_iter()
                            .map(|(s, d, c, r)| Edge::new(s, d, c as f64, r as f64)),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn table_invariants(g in arb_instance(false), rows in 1usize..15) {
            let sg = ScaledGraph::integral(&g).unwrap();
            let mut table = DpTable::new(g.vertex_count(), 0);
            for _ in 0..rows {
                table.compute_row(&sg);
            }
            for i in 0..rows {
                prop_assert_eq!(table.row(i)[0], Some(0.0));
                for v in 0..g.vertex_count() {
                    if i > 0 {
                        if let Some(old) = table.row(i - 1)[v] {
                            prop_assert!(table.row(i)[v].is_some_and(|c| c <= old));
                        }
                    }
                    if let Some(r) = table.row(i)[v] {
                        let p = table.reconstruct_path(v, i).unwrap();
                        let scaled: u64 = p.edges.iter().map(|&e| sg.cost(e)).sum();
                        prop_assert!(scaled <= i as u64);
                        prop_assert_eq!(evaluate_path(&g, &p).unwrap().1, r);
                        let verts = p.vertices(&g, 0);
                        prop_assert_eq!(verts[0], 0);
                        prop_assert_eq!(*verts.last().unwrap(), v);
                    }
                }
            }
        }

        #[test]
        fn skipping_empty_zero_subgraph_is_invisible(g in arb_instance(true), rows in 1usize..15) {
            let sg = scale(&g, 1.0, Rounding::Floor).unwrap();
            prop_assert!(!sg.has_zero_cost_edges());
            let mut fast = DpTable::new(g.vertex_count(), 0);
            let mut general = DpTable::new(g.vertex_count(), 0);
            let slow = DpOptions { skip_empty_zero_subgraph: false };
            for _ in 0..rows {
                let a = fast.compute_row_with(&sg, &Dijkstra, DpOptions::default()).to_vec();
                let b = general.compute_row_with(&sg, &Dijkstra, slow).to_vec();
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn rows_computed_is_min_of_opt_and_budget_plus_one(
            g in arb_instance(false),
            bound in 0u32..30,
            budget in 0u64..20,
        ) {
            let n = g.vertex_count();
            let sg = ScaledGraph::integral(&g).unwrap();
            let q = Query::new(0, n - 1, bound as f64).unwrap();
            let run = exact_rsp(&sg, &q, budget).unwrap();
            let unbounded = exact_rsp(&sg, &q, 4 * n as u64 + 1).unwrap();
            match unbounded.outcome.cost() {
                Some(opt) => {
                    prop_assert_eq!(run.stats.rows, opt.min(budget) + 1);
                    prop_assert_eq!(run.outcome.cost().is_some(), opt <= budget);
                }
                None => prop_assert_eq!(run.stats.rows, budget + 1),
            }
        }
    }
}
