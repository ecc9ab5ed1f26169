//! Lower/upper estimates `L <= C_opt <= U` of the optimal cost.
//!
//! Three procedures are provided:
//!
//! * [`initial_bounds`]: smallest cost-sorted edge prefix that admits a
//!   feasible path, giving `U = n * L`. Also detects infeasible instances and
//!   instances whose optimum is zero.
//! * [`ls_bounds`]: linear search down the scale ladder for the first floor
//!   scaling whose optimum exceeds a budget `b`; ratio `2n/b` or `2 + 2n/b`.
//! * [`refine_bounds_binary`]: binary search over the ladder for a ceil
//!   scaling whose optimum lies in `[2n, 5n]`; ratio at most 2.

use crate::error::{Result, RspError};
use crate::exact::{exact_rsp, DpStats, ExactOutcome};
use crate::graph::{EdgeId, Graph, Path, Query};
use crate::scaling::{ceil_log2, Rounding, ScaleLadder, ScaledGraph};
use crate::sssp::{sssp, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// From the edge-prefix search; `prefix_len` is the smallest feasible prefix.
    Initial { prefix_len: usize },
    /// Linear search stopped at ladder index `i_star` with budget `budget`.
    LinearSearch { i_star: u32, budget: u64 },
    /// Binary refinement accepted ladder index `i`.
    BinaryRefined { i: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
    pub provenance: Provenance,
    /// DP rows spent by this procedure alone.
    pub rows_spent: u64,
    /// Edge relaxations spent by this procedure alone (DP and SSSP).
    pub relaxations: u64,
}

impl Bounds {
    pub fn ratio(&self) -> f64 {
        self.upper / self.lower
    }

    pub fn brackets(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Preflight {
    Infeasible,
    /// A feasible path using only zero-cost edges.
    ZeroOptimal {
        path: Path,
        relaxations: u64,
    },
    Bounds(Bounds),
}

/// Bounds from the cheapest edge prefix admitting a feasible path.
///
/// Edges are sorted by cost (ties by id) and the smallest prefix length `j*`
/// for which the resource-shortest `s -> t` path within the prefix meets the
/// bound is found by binary search. Every feasible path then uses an edge of
/// cost at least `c(e_j*)`, while the path found has at most `n - 1` edges of
/// cost at most `c(e_j*)`.
pub fn initial_bounds(g: &Graph, q: &Query) -> Result<Preflight> {
    q.check(g)?;
    let m = g.edge_count();
    let mut order: Vec<EdgeId> = (0..m).collect();
    order.sort_by(|&a, &b| g.edge(a).cost.total_cmp(&g.edge(b).cost).then(a.cmp(&b)));
    let mut rank = vec![0usize; m];
    for (pos, &e) in order.iter().enumerate() {
        rank[e] = pos;
    }

    let mut relaxations = 0;
    let mut probe = |len: usize| -> Result<Option<Path>> {
        let res = sssp(g, Weight::Resource, q.source, &|e: EdgeId| rank[e] < len)?;
        relaxations += res.relaxations;
        Ok(match res.dist[q.target] {
            Some(d) if q.admits(d) => res.tree_path(g, q.target).map(Path::new),
            _ => None,
        })
    };

    let Some(mut witness) = probe(m)? else {
        return Ok(Preflight::Infeasible);
    };
    // invariant: prefix `hi` is feasible, prefix `lo` is not
    let (mut lo, mut hi) = (0usize, m);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match probe(mid)? {
            Some(p) => {
                hi = mid;
                witness = p;
            }
            None => lo = mid,
        }
    }
    let prefix_len = hi;
    let pivot = g.edge(order[prefix_len - 1]).cost;
    if pivot == 0.0 {
        return Ok(Preflight::ZeroOptimal {
            path: witness,
            relaxations,
        });
    }
    Ok(Preflight::Bounds(Bounds {
        lower: pivot,
        upper: g.vertex_count() as f64 * pivot,
        provenance: Provenance::Initial { prefix_len },
        rows_spent: 0,
        relaxations,
    }))
}

/// Linear search down the ladder built on `init.upper`: solve the floor
/// scaling at `S_0, S_1, ...` with budget `b` and stop at the first one whose
/// optimum exceeds `b`.
///
/// Requires `1 <= b <= n`, which guarantees termination within
/// `ceil(log2 n)` steps.
pub fn ls_bounds(g: &Graph, q: &Query, budget: u64, init: &Bounds) -> Result<Bounds> {
    let n = g.vertex_count();
    if budget == 0 || budget > n as u64 {
        return Err(RspError::BudgetOutOfRange { budget, n });
    }
    let ladder = ScaleLadder::new(init.upper, n)?;
    let max_steps = ceil_log2(n as f64);
    let b = budget as f64;
    let mut spent = DpStats::default();

    for i in 0..=max_steps {
        let s = ladder.factor(i);
        let scaled = ScaledGraph::new(g, s, Rounding::Floor)?;
        let run = exact_rsp(&scaled, q, budget)?;
        spent += run.stats;
        if run.outcome == ExactOutcome::BudgetExceeded {
            let upper = if i == 0 {
                init.upper
            } else {
                2.0 * s * (b + n as f64)
            };
            return Ok(Bounds {
                lower: s * b,
                upper,
                provenance: Provenance::LinearSearch { i_star: i, budget },
                rows_spent: spent.rows,
                relaxations: spent.relaxations,
            });
        }
    }
    Err(RspError::Contract(format!(
        "linear search did not stop within {} steps; input bounds do not bracket the optimum",
        max_steps + 1
    )))
}

/// One ladder probe made by [`refine_bounds_binary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub i: u32,
    /// Optimum of the ceil scaling, `None` when it exceeds `5n`.
    pub scaled_opt: Option<u64>,
}

/// Binary search over `i in 0..=ceil(log2(U/L))` for a ceil scaling with
/// optimum in `[2n, 5n]`, yielding bounds with ratio at most 2.
pub fn refine_bounds_binary(g: &Graph, q: &Query, input: &Bounds) -> Result<Bounds> {
    refine_bounds_binary_traced(g, q, input).map(|(b, _)| b)
}

pub fn refine_bounds_binary_traced(
    g: &Graph,
    q: &Query,
    input: &Bounds,
) -> Result<(Bounds, Vec<Probe>)> {
    if input.lower.is_nan() || input.lower <= 0.0 || input.lower > input.upper {
        return Err(RspError::Contract(format!(
            "refinement needs 0 < L <= U, got L = {}, U = {}",
            input.lower, input.upper
        )));
    }
    let n = g.vertex_count() as u64;
    let ladder = ScaleLadder::new(input.upper, g.vertex_count())?;
    let depth = ladder.depth(input.lower);
    let max_probes = ceil_log2((input.upper / input.lower).max(2.0)) + 2;
    let mut spent = DpStats::default();
    let mut probes = Vec::new();

    let (mut lo, mut hi) = (0u32, depth);
    while lo <= hi && (probes.len() as u32) < max_probes {
        let mid = lo + (hi - lo) / 2;
        let s = ladder.factor(mid);
        let scaled = ScaledGraph::new(g, s, Rounding::Ceil)?;
        let run = exact_rsp(&scaled, q, 5 * n)?;
        spent += run.stats;
        let scaled_opt = run.outcome.cost();
        probes.push(Probe { i: mid, scaled_opt });
        match scaled_opt {
            // factor too large: go further down the ladder
            Some(v) if v < 2 * n => lo = mid + 1,
            Some(v) => {
                let v = v as f64;
                let bounds = Bounds {
                    lower: s * (v - n as f64),
                    upper: s * v,
                    provenance: Provenance::BinaryRefined { i: mid },
                    rows_spent: spent.rows,
                    relaxations: spent.relaxations,
                };
                return Ok((bounds, probes));
            }
            // optimum above 5n: factor too small
            None => {
                if mid == 0 {
                    break;
                }
                hi = mid - 1;
            }
        }
    }
    Err(RspError::Contract(format!(
        "no ladder index in 0..={depth} gives a scaled optimum in [2n, 5n] (probes: {probes:?})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, S, T};
    use crate::graph::evaluate_path;

    fn q(bound: f64) -> Query {
        Query::new(S, T, bound).unwrap()
    }

    fn example_initial() -> Bounds {
        let g = fixtures::zero_cost_cycle_graph();
        match initial_bounds(&g, &q(15.0)).unwrap() {
            Preflight::Bounds(b) => b,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn initial_bounds_on_example() {
        let b = example_initial();
        assert_eq!((b.lower, b.upper), (2.0, 12.0));
        // the first cost-2 edge (s->a, id 0) already admits s-a-b-c-d-t with resource 15
        assert_eq!(b.provenance, Provenance::Initial { prefix_len: 7 });
        assert_eq!(b.rows_spent, 0);
    }

    #[test]
    fn initial_bounds_infeasible() {
        let g = fixtures::zero_cost_cycle_graph();
        assert_eq!(initial_bounds(&g, &q(13.0)).unwrap(), Preflight::Infeasible);
        let empty = Graph::new(2, []).unwrap();
        let q01 = Query::new(0, 1, 5.0).unwrap();
        assert_eq!(initial_bounds(&empty, &q01).unwrap(), Preflight::Infeasible);
    }

    #[test]
    fn initial_bounds_zero_optimal() {
        let g = Graph::from_tuples(2, &[(0, 1, 0.0, 1.0)]).unwrap();
        let pre = initial_bounds(&g, &Query::new(0, 1, 1.0).unwrap()).unwrap();
        let Preflight::ZeroOptimal { path, .. } = pre else {
            panic!("expected zero optimum, got {pre:?}")
        };
        assert_eq!(path.edges, vec![0]);
        assert_eq!(evaluate_path(&g, &path).unwrap(), (0.0, 1.0));
    }

    #[test]
    fn linear_search_on_example() {
        let g = fixtures::zero_cost_cycle_graph();
        let init = example_initial();

        let b6 = ls_bounds(&g, &q(15.0), 6, &init).unwrap();
        assert_eq!((b6.lower, b6.upper), (3.0, 12.0));
        assert_eq!(
            b6.provenance,
            Provenance::LinearSearch {
                i_star: 1,
                budget: 6
            }
        );
        assert_eq!(b6.ratio(), 2.0 + 2.0 * 6.0 / 6.0);
        // optimum 4 at S_0 (5 rows), then budget exhausted at S_1 (7 rows)
        assert_eq!(b6.rows_spent, 12);

        let b2 = ls_bounds(&g, &q(15.0), 2, &init).unwrap();
        assert_eq!((b2.lower, b2.upper), (2.0, 12.0));
        assert_eq!(
            b2.provenance,
            Provenance::LinearSearch {
                i_star: 0,
                budget: 2
            }
        );
        assert_eq!(b2.upper, init.upper);
    }

    #[test]
    fn linear_search_rejects_bad_budget() {
        let g = fixtures::zero_cost_cycle_graph();
        let init = example_initial();
        assert!(matches!(
            ls_bounds(&g, &q(15.0), 0, &init),
            Err(RspError::BudgetOutOfRange { .. })
        ));
        assert!(matches!(
            ls_bounds(&g, &q(15.0), 7, &init),
            Err(RspError::BudgetOutOfRange { budget: 7, n: 6 })
        ));
    }

    #[test]
    fn example_probe_is_in_range() {
        // at S = 1/4 the ceil costs are 4c + 1 and the optimum is 21, inside [12, 30]
        let g = fixtures::zero_cost_cycle_graph();
        let scaled = ScaledGraph::new(&g, 0.25, Rounding::Ceil).unwrap();
        let run = exact_rsp(&scaled, &q(15.0), 30).unwrap();
        assert_eq!(run.outcome.cost(), Some(21));
    }

    #[test]
    fn refinement_on_example() {
        let g = fixtures::zero_cost_cycle_graph();
        for input in [example_initial(), {
            let init = example_initial();
            ls_bounds(&g, &q(15.0), 6, &init).unwrap()
        }] {
            let (out, probes) = refine_bounds_binary_traced(&g, &q(15.0), &input).unwrap();
            assert!(out.brackets(4.0), "{out:?}");
            assert!(out.ratio() <= 2.0);
            assert!(!probes.is_empty());
        }
    }

    #[test]
    fn refinement_rejects_degenerate_input() {
        let g = fixtures::zero_cost_cycle_graph();
        let mut b = example_initial();
        b.lower = 0.0;
        assert!(refine_bounds_binary(&g, &q(15.0), &b).is_err());
    }
}
