//! Integer cost views of a graph obtained by dividing every cost by a factor
//! `S` and rounding, and the geometric ladder of factors searched by the
//! bound procedures.

use crate::error::{Result, RspError};
use crate::graph::{EdgeId, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// `floor(c / S)`
    Floor,
    /// `floor(c / S) + 1`, always at least one
    Ceil,
}

/// A graph whose costs have been replaced by nonnegative integers. Topology
/// and resources are borrowed from the base graph.
#[derive(Debug, Clone)]
pub struct ScaledGraph<'g> {
    base: &'g Graph,
    factor: f64,
    rounding: Rounding,
    costs: Vec<u64>,
    zero_cost_edges: usize,
}

impl<'g> ScaledGraph<'g> {
    pub fn new(base: &'g Graph, factor: f64, rounding: Rounding) -> Result<Self> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(RspError::InvalidScale(factor));
        }
        let costs: Vec<u64> = base
            .edges()
            .iter()
            .map(|e| {
                // float-to-int casts saturate, which only matters for absurd ratios
                let floor = (e.cost / factor).floor() as u64;
                match rounding {
                    Rounding::Floor => floor,
                    Rounding::Ceil => floor.saturating_add(1),
                }
            })
            .collect();
        Ok(Self::from_costs(base, factor, rounding, costs))
    }

    /// The graph's own costs, which must all be integers.
    pub fn integral(base: &'g Graph) -> Result<Self> {
        if let Some(edge) = base.first_fractional_cost() {
            return Err(RspError::NonIntegerCost {
                edge,
                cost: base.edge(edge).cost,
            });
        }
        ScaledGraph::new(base, 1.0, Rounding::Floor)
    }

    fn from_costs(base: &'g Graph, factor: f64, rounding: Rounding, costs: Vec<u64>) -> Self {
        let zero_cost_edges = costs.iter().filter(|&&c| c == 0).count();
        ScaledGraph {
            base,
            factor,
            rounding,
            costs,
            zero_cost_edges,
        }
    }

    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    #[inline]
    pub fn cost(&self, e: EdgeId) -> u64 {
        self.costs[e]
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn has_zero_cost_edges(&self) -> bool {
        self.zero_cost_edges > 0
    }

    /// Materializes the view as a standalone graph with the integer costs.
    pub fn to_graph(&self) -> Graph {
        Graph::new(
            self.base.vertex_count(),
            self.base
                .edges()
                .iter()
                .zip(&self.costs)
                .map(|(e, &c)| crate::graph::Edge {
                    cost: c as f64,
                    ..*e
                }),
        )
        .expect("scaled copy of a valid graph is valid")
    }
}

pub fn scale(g: &Graph, factor: f64, rounding: Rounding) -> Result<ScaledGraph<'_>> {
    ScaledGraph::new(g, factor, rounding)
}

/// Factors `S_i = 2^-i * U / (2n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleLadder {
    upper: f64,
    n: usize,
    first: f64,
}

impl ScaleLadder {
    pub fn new(upper: f64, n: usize) -> Result<Self> {
        let first = upper / (2 * n) as f64;
        if !first.is_finite() || first <= 0.0 {
            return Err(RspError::InvalidScale(first));
        }
        Ok(ScaleLadder { upper, n, first })
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `S_i`, obtained from `S_0` by `i` exact halvings.
    pub fn factor(&self, i: u32) -> f64 {
        let mut s = self.first;
        for _ in 0..i {
            s *= 0.5;
        }
        s
    }

    /// `ceil(log2(U / L))`, clamped at zero.
    pub fn depth(&self, lower: f64) -> u32 {
        ceil_log2(self.upper / lower)
    }
}

/// `ceil(log2(x))` for `x >= 1`, zero below that.
pub fn ceil_log2(x: f64) -> u32 {
    if x.is_nan() || x <= 1.0 {
        return 0;
    }
    let mut k = 0;
    let mut p = 1.0f64;
    while p < x {
        p *= 2.0;
        k += 1;
    }
    k
}
