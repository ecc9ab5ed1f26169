//! Exact and `(1 + eps)`-approximate solvers for the restricted shortest path
//! problem: given a digraph whose edges carry a cost and a resource
//! consumption, find a cheapest `s -> t` path whose total resource does not
//! exceed a bound `R`.
//!
//! The building blocks, bottom-up:
//!
//! * [`graph`]: instances, queries and paths.
//! * [`sssp`]: Dijkstra over a filtered edge set, with a multi-seed form.
//! * [`scaling`]: floor/ceil integer cost views and the ladder of factors.
//! * [`exact`]: the pseudopolynomial DP over integer cost budgets, handling
//!   zero-cost edges with one SSSP per row.
//! * [`bounds`]: initial bounds, linear-search bounds and binary refinement.
//! * [`fptas`]: the end-to-end approximation strategies.
//! * [`oracle`]: brute-force and Pareto-label reference solvers.
//! * [`generate`]: seeded instance generators.
//!
//! ```
//! use rsp_core::{approximate, fixtures, Outcome, Query, Strategy};
//!
//! let g = fixtures::zero_cost_cycle_graph();
//! let q = Query::new(fixtures::S, fixtures::T, 15.0).unwrap();
//! let Outcome::Solved(sol) = approximate(&g, &q, 0.5, Strategy::Linear).unwrap() else {
//!     panic!("feasible instance");
//! };
//! assert_eq!((sol.cost, sol.resource), (4.0, 15.0));
//! ```

pub mod bounds;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod fptas;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod scaling;
pub mod sssp;

pub use bounds::{initial_bounds, ls_bounds, refine_bounds_binary, Bounds, Preflight, Provenance};
pub use error::{Result, RspError};
pub use exact::{exact_rsp, DpStats, DpTable, ExactOutcome, ExactRun};
pub use fptas::{approximate, final_scaled_solve, Certificate, Outcome, RspSolution, Strategy};
pub use generate::{GraphClass, WeightSpec};
pub use graph::{evaluate_path, Edge, EdgeId, Graph, Path, Query, VertexId};
pub use oracle::{brute_force_opt, pareto_opt, OracleOutcome};
pub use scaling::{Rounding, ScaleLadder, ScaledGraph};
pub use sssp::{sssp, sssp_super_source, Dijkstra, SsspEngine, SsspResult, Weight};
