//! Parameter sweeps over generated instances, emitted as CSV.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use rsp_core::generate::interesting_query;
use rsp_core::oracle::DEFAULT_MAX_VERTICES;
use rsp_core::{
    approximate, brute_force_opt, pareto_opt, Graph, GraphClass, Query, RspError, Strategy,
    WeightSpec,
};

pub const CSV_HEADER: &str =
    "class,n,m,seed,epsilon,strategy,rows_total,relaxations_total,wall_time,ratio_to_oracle";

/// Label limit for the Pareto reference inside sweeps.
const SWEEP_LABEL_LIMIT: usize = 1 << 18;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub classes: Vec<GraphClass>,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub seeds: Vec<u64>,
    pub strategies: Vec<Strategy>,
    pub weights: WeightSpec,
    /// Largest `n` for which a reference optimum is computed.
    pub oracle_max_n: usize,
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            classes: vec![GraphClass::General],
            sizes: vec![50, 100, 200, 400],
            epsilons: vec![0.5],
            seeds: vec![1, 2, 3],
            strategies: Strategy::APPROXIMATE.to_vec(),
            weights: WeightSpec {
                zero_cost_fraction: 0.2,
                ..WeightSpec::default()
            },
            oracle_max_n: 100,
            timing: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub class: GraphClass,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub strategy: Strategy,
    pub cost: f64,
    pub rows_total: u64,
    pub relaxations_total: u64,
    /// Seconds.
    pub wall_time: Option<f64>,
    pub ratio_to_oracle: Option<f64>,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let opt = |x: Option<f64>| x.map_or(String::new(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.class.name(),
            self.n,
            self.m,
            self.seed,
            self.epsilon,
            self.strategy.name(),
            self.rows_total,
            self.relaxations_total,
            self.wall_time.map_or(String::new(), |t| format!("{t:.6}")),
            opt(self.ratio_to_oracle),
        )
    }
}

fn reference_opt(g: &Graph, q: &Query, max_n: usize) -> Result<Option<f64>, RspError> {
    let n = g.vertex_count();
    if n > max_n {
        return Ok(None);
    }
    if n <= DEFAULT_MAX_VERTICES {
        return Ok(brute_force_opt(g, q, n)?.cost());
    }
    match pareto_opt(g, q, SWEEP_LABEL_LIMIT) {
        Ok(o) => Ok(o.cost()),
        Err(RspError::LabelLimitExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_instance(
    cfg: &SweepConfig,
    class: GraphClass,
    n: usize,
    seed: u64,
) -> Result<Vec<SweepRow>, RspError> {
    let g = class.generate(n, seed, &cfg.weights)?;
    let t = g.vertex_count() - 1;
    let Some(q) = interesting_query(&g, 0, t, seed)? else {
        return Ok(Vec::new());
    };
    let opt = reference_opt(&g, &q, cfg.oracle_max_n)?;
    let mut rows = Vec::new();
    for &epsilon in &cfg.epsilons {
        for &strategy in &cfg.strategies {
            let start = Instant::now();
            let out = approximate(&g, &q, epsilon, strategy)?;
            let elapsed = start.elapsed().as_secs_f64();
            let Some(sol) = out.solution() else {
                // interesting_query only yields feasible bounds
                return Err(RspError::Contract(format!(
                    "{strategy} reported a generated instance infeasible"
                )));
            };
            rows.push(SweepRow {
                class,
                n: g.vertex_count(),
                m: g.edge_count(),
                seed,
                epsilon,
                strategy,
                cost: sol.cost,
                rows_total: sol.certificate.rows,
                relaxations_total: sol.certificate.relaxations,
                wall_time: cfg.timing.then_some(elapsed),
                ratio_to_oracle: opt.filter(|&c| c > 0.0).map(|c| sol.cost / c),
            });
        }
    }
    Ok(rows)
}

/// Runs the sweep in parallel over instances. Rows come back ordered by
/// class, size, seed, epsilon and strategy, as listed in the config.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, RspError> {
    if cfg.strategies.contains(&Strategy::Exact) && !cfg.weights.integer_costs {
        return Err(RspError::InvalidGenerator(
            "the exact strategy needs integer costs".into(),
        ));
    }
    let jobs: Vec<(GraphClass, usize, u64)> = cfg
        .classes
        .iter()
        .flat_map(|&c| {
            cfg.sizes
                .iter()
                .flat_map(move |&n| cfg.seeds.iter().map(move |&s| (c, n, s)))
        })
        .collect();
    let per_job: Vec<Vec<SweepRow>> = jobs
        .par_iter()
        .map(|&(c, n, s)| run_instance(cfg, c, n, s))
        .collect::<Result<_, _>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

pub fn write_csv(rows: &[SweepRow], mut w: impl Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.csv_line())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            classes: GraphClass::ALL.to_vec(),
            sizes: vec![8, 20],
            epsilons: vec![1.0, 0.1],
            seeds: vec![4, 5],
            oracle_max_n: 20,
            timing: false,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn deterministic_and_ordered() {
        let cfg = small();
        let a = sweep(&cfg).unwrap();
        let b = sweep(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4 * 2 * 2 * 2 * 3);
        assert_eq!(a[0].class, GraphClass::General);
        assert_eq!(a[0].strategy, Strategy::Linear);
        assert_eq!(a[1].strategy, Strategy::Hybrid);
        assert_eq!(a.last().unwrap().class, GraphClass::UndirectedIntRes);

        let mut buf = Vec::new();
        write_csv(&a, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let cols = CSV_HEADER.split(',').count();
        assert!(lines.all(|l| l.split(',').count() == cols));
    }

    #[test]
    fn ratios_respect_epsilon() {
        for r in sweep(&small()).unwrap() {
            let Some(ratio) = r.ratio_to_oracle else {
                assert_eq!(r.cost, 0.0, "oracle runs for n <= 20");
                continue;
            };
            assert!(
                ratio >= 1.0 - 1e-9 && ratio <= (1.0 + r.epsilon) * (1.0 + 1e-9),
                "{r:?}"
            );
        }
    }

    #[test]
    fn exact_needs_integer_costs() {
        let cfg = SweepConfig {
            strategies: vec![Strategy::Exact],
            ..small()
        };
        assert!(sweep(&cfg).is_err());
        let cfg = SweepConfig {
            weights: WeightSpec::integer(10, 10, 0.2),
            ..cfg
        };
        assert!(sweep(&cfg)
            .unwrap()
            .iter()
            .all(|r| r.ratio_to_oracle.unwrap_or(1.0) == 1.0));
    }
}
