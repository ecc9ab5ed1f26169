//! End-to-end `(1 + eps)`-approximation.
//!
//! Every strategy follows the same two steps: obtain bounds `L <= C_opt <= U`
//! with a bounded ratio, then solve the ceil scaling with factor
//! `S = eps * L / n` exactly. The returned path costs at most
//! `C_opt + S * n <= (1 + eps) * C_opt`.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{initial_bounds, ls_bounds, refine_bounds_binary, Bounds, Preflight};
use crate::error::{Result, RspError};
use crate::exact::{exact_rsp, DpStats, ExactOutcome};
use crate::graph::{evaluate_path, Graph, Path, Query};
use crate::scaling::{Rounding, ScaledGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Exact DP on the original costs; integer-cost instances only.
    Exact,
    /// Linear search with budget `n`, then the final scaled solve.
    Linear,
    /// Linear search with budget `floor(n / log2 n)`, binary refinement, then
    /// the final scaled solve.
    Hybrid,
    /// Binary refinement straight from the initial bounds.
    LorenzRaz,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Exact,
        Strategy::Linear,
        Strategy::Hybrid,
        Strategy::LorenzRaz,
    ];
    pub const APPROXIMATE: [Strategy; 3] =
        [Strategy::Linear, Strategy::Hybrid, Strategy::LorenzRaz];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exact => "exact",
            Strategy::Linear => "linear",
            Strategy::Hybrid => "hybrid",
            Strategy::LorenzRaz => "lorenz_raz",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| {
                format!("unknown strategy `{s}` (expected exact, linear, hybrid or lorenz_raz)")
            })
    }
}

/// Budget used by the hybrid strategy's linear search.
pub fn hybrid_budget(n: usize) -> u64 {
    let n_f = n as f64;
    ((n_f / n_f.log2()).floor() as u64).clamp(1, n as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub epsilon: f64,
    /// Bounds handed to the final solve.
    pub lower: f64,
    pub upper: f64,
    /// Scaling factor of the final solve (1 for the exact strategy, 0 when
    /// the optimum is zero).
    pub scale: f64,
    pub strategy: Strategy,
    pub rows: u64,
    pub relaxations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RspSolution {
    pub path: Path,
    pub cost: f64,
    pub resource: f64,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Solved(RspSolution),
    /// A feasible path of cost zero, found during preflight.
    ZeroOptimal(RspSolution),
    Infeasible,
}

impl Outcome {
    pub fn solution(&self) -> Option<&RspSolution> {
        match self {
            Outcome::Solved(s) | Outcome::ZeroOptimal(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }
}

/// Result of the final scaled solve.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalSolve {
    pub path: Path,
    pub scale: f64,
    pub budget: u64,
    pub stats: DpStats,
}

/// Solves the ceil scaling with `S = eps * L / n` and budget
/// `ceil(d * L / S) + n`, which cannot be exceeded when
/// `L <= C_opt <= d * L`.
pub fn final_scaled_solve(
    g: &Graph,
    q: &Query,
    lower: f64,
    ratio: f64,
    epsilon: f64,
) -> Result<FinalSolve> {
    check_epsilon(epsilon)?;
    if !(lower > 0.0 && lower.is_finite()) || !(ratio >= 1.0 && ratio.is_finite()) {
        return Err(RspError::Contract(format!(
            "final solve needs L > 0 and d >= 1, got L = {lower}, d = {ratio}"
        )));
    }
    let n = g.vertex_count();
    let scale = epsilon * lower / n as f64;
    let budget_f = (ratio * lower / scale).ceil() + n as f64;
    if budget_f.is_nan() || budget_f >= u64::MAX as f64 {
        return Err(RspError::Contract(format!(
            "final budget {budget_f} overflows"
        )));
    }
    let budget = budget_f as u64;
    let scaled = ScaledGraph::new(g, scale, Rounding::Ceil)?;
    let run = exact_rsp(&scaled, q, budget)?;
    match run.outcome {
        ExactOutcome::Found { path, .. } => Ok(FinalSolve {
            path,
            scale,
            budget,
            stats: run.stats,
        }),
        ExactOutcome::BudgetExceeded => Err(RspError::Contract(format!(
            "final solve exceeded budget {budget}; bounds (L = {lower}, d = {ratio}) do not hold"
        ))),
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(RspError::InvalidEpsilon(epsilon))
    }
}

/// Computes a `(1 + eps)`-approximate restricted shortest path.
pub fn approximate(g: &Graph, q: &Query, epsilon: f64, strategy: Strategy) -> Result<Outcome> {
    check_epsilon(epsilon)?;
    q.check(g)?;
    if strategy == Strategy::Exact {
        // reject early so the error does not depend on feasibility
        ScaledGraph::integral(g)?;
    }

    let init = match initial_bounds(g, q)? {
        Preflight::Infeasible => return Ok(Outcome::Infeasible),
        Preflight::ZeroOptimal { path, relaxations } => {
            let (cost, resource) = evaluate_path(g, &path)?;
            return Ok(Outcome::ZeroOptimal(RspSolution {
                path,
                cost,
                resource,
                certificate: Certificate {
                    epsilon,
                    lower: 0.0,
                    upper: 0.0,
                    scale: 0.0,
                    strategy,
                    rows: 0,
                    relaxations,
                },
            }));
        }
        Preflight::Bounds(b) => b,
    };
    let n = g.vertex_count();
    let mut spent = DpStats {
        rows: 0,
        relaxations: init.relaxations,
    };
    let mut charge = |b: &Bounds| {
        spent.rows += b.rows_spent;
        spent.relaxations += b.relaxations;
    };

    let (path, bounds, scale) = if strategy == Strategy::Exact {
        let integral = ScaledGraph::integral(g)?;
        // U = n * c(e_j*) is an integer upper bound on the optimum
        let run = exact_rsp(&integral, q, init.upper as u64)?;
        charge(&Bounds {
            rows_spent: run.stats.rows,
            relaxations: run.stats.relaxations,
            ..init
        });
        let ExactOutcome::Found { cost, path } = run.outcome else {
            return Err(RspError::Contract(format!(
                "exact solve exceeded the initial upper bound {}",
                init.upper
            )));
        };
        let c = cost as f64;
        (path, (c, c), 1.0)
    } else {
        let bounds = match strategy {
            Strategy::Linear => {
                let ls = ls_bounds(g, q, n as u64, &init)?;
                charge(&ls);
                ls
            }
            Strategy::Hybrid => {
                let ls = ls_bounds(g, q, hybrid_budget(n), &init)?;
                charge(&ls);
                let refined = refine_bounds_binary(g, q, &ls)?;
                charge(&refined);
                refined
            }
            Strategy::LorenzRaz => {
                let refined = refine_bounds_binary(g, q, &init)?;
                charge(&refined);
                refined
            }
            Strategy::Exact => unreachable!(),
        };
        let fin = final_scaled_solve(g, q, bounds.lower, bounds.ratio(), epsilon)?;
        spent += fin.stats;
        (fin.path, (bounds.lower, bounds.upper), fin.scale)
    };

    let (cost, resource) = evaluate_path(g, &path)?;
    if !path.connects(g, q) || !q.admits(resource) {
        return Err(RspError::Contract(
            "solver returned a path that is not a feasible s-t path".into(),
        ));
    }
    let (lower, upper) = bounds;
    if cost > (1.0 + epsilon) * upper * (1.0 + 1e-9) {
        return Err(RspError::Contract(format!(
            "cost {cost} exceeds (1 + eps) * U = {}",
            (1.0 + epsilon) * upper
        )));
    }
    Ok(Outcome::Solved(RspSolution {
        path,
        cost,
        resource,
        certificate: Certificate {
            epsilon,
            lower,
            upper,
            scale,
            strategy,
            rows: spent.rows,
            relaxations: spent.relaxations,
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, A, B, C, D, S, T};

    fn q(bound: f64) -> Query {
        Query::new(S, T, bound).unwrap()
    }

    #[test]
    fn strategy_names_round_trip() {
        for st in Strategy::ALL {
            assert_eq!(st.name().parse::<Strategy>(), Ok(st));
        }
        assert!("binary".parse::<Strategy>().is_err());
    }

    #[test]
    fn hybrid_budget_values() {
        assert_eq!(hybrid_budget(2), 2);
        assert_eq!(hybrid_budget(3), 1);
        assert_eq!(hybrid_budget(16), 4);
        assert_eq!(hybrid_budget(1024), 102);
    }

    #[test]
    fn linear_on_example_is_optimal() {
        let g = fixtures::zero_cost_cycle_graph();
        let out = approximate(&g, &q(15.0), 0.5, Strategy::Linear).unwrap();
        let Outcome::Solved(sol) = out else {
            panic!("{out:?}")
        };
        assert_eq!(sol.cost, 4.0);
        assert_eq!(sol.resource, 15.0);
        assert_eq!(sol.path, fixtures::path_through(&g, &[S, A, B, C, D, T]));
        assert_eq!((sol.certificate.lower, sol.certificate.upper), (3.0, 12.0));
        assert_eq!(sol.certificate.scale, 0.25);
    }

    #[test]
    fn every_strategy_on_example() {
        let g = fixtures::zero_cost_cycle_graph();
        for st in Strategy::ALL {
            for eps in [0.01, 0.3, 1.0, 1e3] {
                let sol = approximate(&g, &q(17.0), eps, st).unwrap();
                let sol = sol.solution().unwrap();
                assert!(sol.cost <= (1.0 + eps) * 2.0, "{st} {eps}: {sol:?}");
                assert!(sol.resource <= 17.0);
            }
        }
        let exact = approximate(&g, &q(15.0), 0.1, Strategy::Exact).unwrap();
        assert_eq!(exact.solution().unwrap().cost, 4.0);
    }

    #[test]
    fn infeasible_and_zero_optimal() {
        let g = fixtures::zero_cost_cycle_graph();
        assert_eq!(
            approximate(&g, &q(13.0), 0.5, Strategy::Hybrid).unwrap(),
            Outcome::Infeasible
        );
        let z = Graph::from_tuples(2, &[(0, 1, 0.0, 1.0), (0, 1, 5.0, 0.5)]).unwrap();
        let out = approximate(&z, &Query::new(0, 1, 1.0).unwrap(), 0.5, Strategy::Linear).unwrap();
        assert!(matches!(out, Outcome::ZeroOptimal(ref s) if s.cost == 0.0));
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = fixtures::zero_cost_cycle_graph();
        for eps in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                approximate(&g, &q(15.0), eps, Strategy::Linear),
                Err(RspError::InvalidEpsilon(_))
            ));
        }
        let frac = Graph::from_tuples(2, &[(0, 1, 0.5, 1.0)]).unwrap();
        assert!(matches!(
            approximate(&frac, &Query::new(0, 1, 1.0).unwrap(), 0.5, Strategy::Exact),
            Err(RspError::NonIntegerCost { .. })
        ));
    }

    #[test]
    fn final_solve_on_example() {
        let g = fixtures::zero_cost_cycle_graph();
        let fin = final_scaled_solve(&g, &q(15.0), 3.0, 4.0, 0.5).unwrap();
        assert_eq!(fin.scale, 0.25);
        assert_eq!(fin.budget, 48 + 6);
        assert_eq!(fin.stats.rows, 22);
        assert_eq!(evaluate_path(&g, &fin.path).unwrap(), (4.0, 15.0));
    }

    #[test]
    fn final_solve_with_huge_epsilon() {
        let g = fixtures::zero_cost_cycle_graph();
        let fin = final_scaled_solve(&g, &q(15.0), 3.0, 4.0, 1e3).unwrap();
        assert_eq!(fin.budget, 7);
        let (_, r) = evaluate_path(&g, &fin.path).unwrap();
        assert!(r <= 15.0);
    }

    #[test]
    fn final_solve_single_edge() {
        let g = Graph::from_tuples(2, &[(0, 1, 5.0, 1.0)]).unwrap();
        for eps in [0.01, 1.0, 50.0] {
            let fin =
                final_scaled_solve(&g, &Query::new(0, 1, 1.0).unwrap(), 5.0, 1.0, eps).unwrap();
            assert_eq!(fin.path.edges, vec![0]);
        }
    }
}
