//! Human-readable and JSON renderings of solver results.

use std::fmt::Write as _;

use rsp_core::{Certificate, Graph, Query, RspSolution};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    Infeasible,
    /// The exact DP ran out of budget before reaching a feasible row.
    BudgetExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Solved => "solved",
            Status::Infeasible => "infeasible",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateJson {
    pub epsilon: f64,
    pub lower: f64,
    pub upper: f64,
    pub scale: f64,
    pub strategy: String,
    pub rows: u64,
    pub relaxations: u64,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            epsilon: c.epsilon,
            lower: c.lower,
            upper: c.upper,
            scale: c.scale,
            strategy: c.strategy.name().to_string(),
            rows: c.rows,
            relaxations: c.relaxations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub status: Status,
    pub cost: Option<f64>,
    pub resource: Option<f64>,
    /// Vertices of the path, 1-based.
    pub path: Option<Vec<usize>>,
    pub certificate: Option<CertificateJson>,
}

impl SolveReport {
    pub fn unsolved(status: Status) -> Self {
        SolveReport {
            status,
            cost: None,
            resource: None,
            path: None,
            certificate: None,
        }
    }

    pub fn solved(g: &Graph, q: &Query, sol: &RspSolution) -> Self {
        SolveReport {
            status: Status::Solved,
            cost: Some(sol.cost),
            resource: Some(sol.resource),
            path: Some(
                sol.path
                    .vertices(g, q.source)
                    .iter()
                    .map(|v| v + 1)
                    .collect(),
            ),
            certificate: Some((&sol.certificate).into()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("status: {}\n", self.status.as_str());
        if let (Some(c), Some(r), Some(p)) = (self.cost, self.resource, &self.path) {
            let _ = writeln!(out, "cost: {c}");
            let _ = writeln!(out, "resource: {r}");
            let verts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "path: {}", verts.join(" "));
        }
        if let Some(cert) = &self.certificate {
            let _ = writeln!(
                out,
                "certificate: strategy {} epsilon {} bounds [{}, {}] scale {} rows {} relaxations {}",
                cert.strategy,
                cert.epsilon,
                cert.lower,
                cert.upper,
                cert.scale,
                cert.rows,
                cert.relaxations
            );
        }
        out
    }
}
