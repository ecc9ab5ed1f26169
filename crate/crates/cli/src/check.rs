//! Cross-checks every strategy against a reference solver on one instance.

use std::fmt::Write as _;

use rsp_core::oracle::{DEFAULT_LABEL_LIMIT, DEFAULT_MAX_VERTICES};
use rsp_core::{approximate, brute_force_opt, pareto_opt, Graph, Query, RspError, Strategy};

/// Relative slack allowed on top of `(1 + eps) * C_opt`.
pub const COST_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    BruteForce(Option<f64>),
    Pareto(Option<f64>),
    /// The Pareto solver hit its label limit.
    Unavailable,
}

impl Reference {
    fn optimum(&self) -> Option<Option<f64>> {
        match self {
            Reference::BruteForce(c) | Reference::Pareto(c) => Some(*c),
            Reference::Unavailable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyCheck {
    pub strategy: Strategy,
    /// `(cost, resource)` of the returned path, `None` if reported infeasible.
    pub result: Option<(f64, f64)>,
    pub ok: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub epsilon: f64,
    pub reference: Reference,
    pub checks: Vec<StrategyCheck>,
}

impl CheckReport {
    pub fn agrees(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let show = |c: Option<f64>| c.map_or("infeasible".to_string(), |c| c.to_string());
        let _ = match &self.reference {
            Reference::BruteForce(c) => writeln!(out, "reference brute_force: {}", show(*c)),
            Reference::Pareto(c) => writeln!(out, "reference pareto: {}", show(*c)),
            Reference::Unavailable => writeln!(out, "reference: unavailable (label limit)"),
        };
        for c in &self.checks {
            let res = match c.result {
                Some((cost, r)) => format!("cost {cost} resource {r}"),
                None => "infeasible".into(),
            };
            let verdict = if c.ok { "ok" } else { "MISMATCH" };
            let _ = write!(out, "{:<11} {:<40} {verdict}", c.strategy.name(), res);
            if !c.note.is_empty() {
                let _ = write!(out, " ({})", c.note);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.agrees() { "agree" } else { "disagree" }
        );
        out
    }
}

fn reference(g: &Graph, q: &Query) -> Result<Reference, RspError> {
    if g.vertex_count() <= DEFAULT_MAX_VERTICES {
        return Ok(Reference::BruteForce(
            brute_force_opt(g, q, DEFAULT_MAX_VERTICES)?.cost(),
        ));
    }
    match pareto_opt(g, q, DEFAULT_LABEL_LIMIT) {
        Ok(o) => Ok(Reference::Pareto(o.cost())),
        Err(RspError::LabelLimitExceeded(_)) => Ok(Reference::Unavailable),
        Err(e) => Err(e),
    }
}

/// Runs every applicable strategy and the reference solver. The exact
/// strategy is skipped on non-integer costs. Without a reference, the
/// strategies are only checked for feasibility and mutual consistency.
pub fn run_check(g: &Graph, q: &Query, epsilon: f64) -> Result<CheckReport, RspError> {
    let reference = reference(g, q)?;
    let mut runs = Vec::new();
    for st in Strategy::ALL {
        if st == Strategy::Exact && !g.has_integer_costs() {
            continue;
        }
        let result = approximate(g, q, epsilon, st)?
            .solution()
            .map(|s| (s.cost, s.resource));
        runs.push((st, result));
    }

    let exact = runs
        .iter()
        .find(|(st, _)| *st == Strategy::Exact)
        .map(|(_, r)| r.map(|(c, _)| c));
    let opt = reference.optimum().or(exact);

    let checks = runs
        .into_iter()
        .map(|(strategy, result)| {
            let (ok, note) = judge(strategy, result, opt, q, epsilon);
            StrategyCheck {
                strategy,
                result,
                ok,
                note,
            }
        })
        .collect();
    Ok(CheckReport {
        epsilon,
        reference,
        checks,
    })
}

fn judge(
    strategy: Strategy,
    result: Option<(f64, f64)>,
    opt: Option<Option<f64>>,
    q: &Query,
    epsilon: f64,
) -> (bool, String) {
    if let Some((_, r)) = result {
        if !q.admits(r) {
            return (false, format!("resource {r} exceeds bound {}", q.bound));
        }
    }
    let Some(opt) = opt else {
        return (true, "feasibility only".into());
    };
    match (result, opt) {
        (None, None) => (true, String::new()),
        (Some(_), None) => (false, "reference says infeasible".into()),
        (None, Some(c)) => (false, format!("reference found cost {c}")),
        (Some((cost, _)), Some(c)) => {
            let limit = if strategy == Strategy::Exact {
                c
            } else {
                (1.0 + epsilon) * c * (1.0 + COST_TOLERANCE)
            };
            if cost < c * (1.0 - COST_TOLERANCE) {
                (false, format!("below the optimum {c}"))
            } else if cost > limit {
                (false, format!("above the limit {limit}"))
            } else {
                (true, String::new())
            }
        }
    }
}
