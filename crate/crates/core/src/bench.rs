//! The randomized multi-start experiment harness: seeded trials per order and
//! formulation, success accounting, cumulative-frequency series, and the CSV
//! schemas.
//!
//! Trials are embarrassingly parallel; a cell fans out over the current rayon
//! pool and records come back in seed order regardless of completion order.
//! With fixed seeds the statuses and iteration counts are deterministic and
//! independent of the degree of parallelism.

use std::time::Duration;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::formulations::{build_magic_binary, build_magic_integer, Formulation, IntGrid};
use crate::point::{Point, Shape};
use crate::solve::{solve, SolveOptions, SolveStatus, StopRule};

/// Which magic-square encoding a benchmark cell runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagicEncoding {
    Integer,
    Binary,
}

impl MagicEncoding {
    pub fn build(self, n: usize) -> Result<Formulation, Error> {
        match self {
            MagicEncoding::Integer => build_magic_integer(n, None),
            MagicEncoding::Binary => build_magic_binary(n, None),
        }
    }
}

/// One solver run's outcome.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub formulation: String,
    pub n: usize,
    pub seed: u64,
    pub status: SolveStatus,
    pub iterations: u64,
    pub wall_time_s: f64,
    pub solution: Option<IntGrid>,
}

/// A full experiment: the cross product of orders and encodings.
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub orders: Vec<usize>,
    pub formulations: Vec<MagicEncoding>,
    pub trials_per_cell: usize,
    pub time_cap: Duration,
    pub iter_cap: Option<u64>,
    pub base_seed: u64,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            orders: vec![3],
            formulations: vec![MagicEncoding::Integer],
            trials_per_cell: 100,
            time_cap: Duration::from_secs(1800),
            iter_cap: None,
            base_seed: 0,
        }
    }
}

impl ExperimentPlan {
    fn stop_rule(&self) -> StopRule {
        StopRule {
            tolerance: 0.05,
            time_cap: self.time_cap,
            iter_cap: self.iter_cap,
        }
    }
}

/// One cell's records, or the construction error that aborted it.
pub struct CellResult {
    pub formulation: &'static str,
    pub n: usize,
    pub outcome: Result<Vec<TrialRecord>, Error>,
}

/// A reproducible starting point with i.i.d. uniform entries in the open
/// interval (0, 1).
pub fn random_start(shape: Shape, seed: u64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..shape.len())
        .map(|_| loop {
            let u: f64 = rng.random();
            if u > 0.0 {
                break u;
            }
        })
        .collect();
    Point::new(shape, data).expect("generated length matches shape")
}

/// Runs one seeded trial against an already-built formulation. Timing covers
/// the solve loop only.
pub fn run_trial(f: &Formulation, seed: u64, rule: &StopRule) -> TrialRecord {
    let x0 = random_start(f.shape(), seed);
    let opts = SolveOptions::default().with_rule(*rule);
    let out = solve(f.sets(), &x0, &opts).expect("formulation shapes are consistent");
    let solution = if out.status == SolveStatus::Solved {
        let grid = f.decode(&out.shadow);
        assert!(
            f.verify(&grid),
            "stop rule admitted an infeasible grid ({} n={} seed={seed})",
            f.name(),
            f.order()
        );
        Some(grid)
    } else {
        None
    };
    TrialRecord {
        formulation: f.name().to_string(),
        n: f.order(),
        seed,
        status: out.status,
        iterations: out.iterations,
        wall_time_s: out.elapsed.as_secs_f64(),
        solution,
    }
}

/// Runs `trials` independent solves with seeds `base_seed..base_seed+trials`,
/// in parallel over the current rayon pool.
pub fn run_cell(
    encoding: MagicEncoding,
    n: usize,
    trials: usize,
    rule: &StopRule,
    base_seed: u64,
) -> Result<Vec<TrialRecord>, Error> {
    let f = encoding.build(n)?;
    Ok((0..trials)
        .into_par_iter()
        .map(|t| run_trial(&f, base_seed + t as u64, rule))
        .collect())
}

/// Runs every cell of the plan. A cell whose formulation fails to build
/// reports the error and does not abort the rest.
pub fn run_plan(plan: &ExperimentPlan) -> Vec<CellResult> {
    let rule = plan.stop_rule();
    let mut results = Vec::new();
    for &encoding in &plan.formulations {
        for &n in &plan.orders {
            let name = match encoding {
                MagicEncoding::Integer => "magic-int",
                MagicEncoding::Binary => "magic-bin",
            };
            results.push(CellResult {
                formulation: name,
                n,
                outcome: run_cell(encoding, n, plan.trials_per_cell, &rule, plan.base_seed),
            });
        }
    }
    results
}

/// Per-cell aggregate: solved count plus mean and max wall time over the
/// solved trials only (timed-out runs do not contribute to the timing stats).
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub formulation: String,
    pub n: usize,
    pub trials: usize,
    pub solved: usize,
    pub success_pct: f64,
    pub mean_time_s: Option<f64>,
    pub max_time_s: Option<f64>,
}

/// Groups records by (formulation, order) in first-appearance order and
/// aggregates each group.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<SummaryRow>, Error> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut rows: Vec<SummaryRow> = Vec::new();
    for r in records {
        if !rows.iter().any(|row| row.formulation == r.formulation && row.n == r.n) {
            rows.push(SummaryRow {
                formulation: r.formulation.clone(),
                n: r.n,
                trials: 0,
                solved: 0,
                success_pct: 0.0,
                mean_time_s: None,
                max_time_s: None,
            });
        }
    }
    for row in &mut rows {
        let mut solved_times = Vec::new();
        for r in records {
            if r.formulation == row.formulation && r.n == row.n {
                row.trials += 1;
                if r.status == SolveStatus::Solved {
                    row.solved += 1;
                    solved_times.push(r.wall_time_s);
                }
            }
        }
        row.success_pct = 100.0 * row.solved as f64 / row.trials as f64;
        if !solved_times.is_empty() {
            row.mean_time_s =
                Some(solved_times.iter().sum::<f64>() / solved_times.len() as f64);
            row.max_time_s = solved_times.iter().copied().reduce(f64::max);
        }
    }
    Ok(rows)
}

/// Fraction of trials solved within each grid time. `time_grid` must be
/// strictly increasing; the output is monotone nondecreasing and ends at the
/// overall success fraction once the grid covers the slowest solve.
pub fn cumulative_frequency(records: &[TrialRecord], time_grid: &[f64]) -> Vec<(f64, f64)> {
    debug_assert!(time_grid.windows(2).all(|w| w[0] < w[1]));
    let total = records.len();
    time_grid
        .iter()
        .map(|&t| {
            let solved = records
                .iter()
                .filter(|r| r.status == SolveStatus::Solved && r.wall_time_s <= t)
                .count();
            let frac = if total == 0 {
                0.0
            } else {
                solved as f64 / total as f64
            };
            (t, frac)
        })
        .collect()
}

/// A logarithmic time grid covering `(10^-4, cap]`, 25 points per decade,
/// always ending exactly at the cap.
pub fn log_time_grid(cap: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let lo = -4.0;
    let hi = cap.log10();
    let per_decade = 25;
    let steps = (((hi - lo) * per_decade as f64).ceil() as usize).max(1);
    for s in 0..=steps {
        let t = 10f64.powf(lo + (hi - lo) * s as f64 / steps as f64);
        grid.push(t.min(cap));
    }
    grid.dedup();
    grid
}

// ---------------------------------------------------------------------------
// CSV schemas
// ---------------------------------------------------------------------------

/// One row per trial: `formulation,n,seed,status,iterations,wall_time_s`.
pub fn trials_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("formulation,n,seed,status,iterations,wall_time_s\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{:.6}\n",
            r.formulation, r.n, r.seed, r.status, r.iterations, r.wall_time_s
        ));
    }
    out
}

/// One row per cell: `formulation,n,trials,solved,success_pct,mean_time_s,max_time_s`.
/// Cells with no solved trials carry `-` in the time columns.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out =
        String::from("formulation,n,trials,solved,success_pct,mean_time_s,max_time_s\n");
    for r in rows {
        let mean = r
            .mean_time_s
            .map_or("-".to_string(), |t| format!("{t:.6}"));
        let max = r.max_time_s.map_or("-".to_string(), |t| format!("{t:.6}"));
        out.push_str(&format!(
            "{},{},{},{},{:.1},{mean},{max}\n",
            r.formulation, r.n, r.trials, r.solved, r.success_pct
        ));
    }
    out
}

/// Cumulative-frequency rows `formulation,n,t_seconds,fraction`, grouped per
/// cell in first-appearance order.
pub fn cumulative_csv(records: &[TrialRecord], time_grid: &[f64]) -> String {
    let mut out = String::from("formulation,n,t_seconds,fraction\n");
    let mut cells: Vec<(String, usize)> = Vec::new();
    for r in records {
        if !cells.iter().any(|(f, n)| *f == r.formulation && *n == r.n) {
            cells.push((r.formulation.clone(), r.n));
        }
    }
    for (f, n) in cells {
        let cell: Vec<TrialRecord> = records
            .iter()
            .filter(|r| r.formulation == f && r.n == n)
            .cloned()
            .collect();
        for (t, frac) in cumulative_frequency(&cell, time_grid) {
            out.push_str(&format!("{f},{n},{t:.6},{frac:.6}\n"));
        }
    }
    out
}

/// FNV-1a hash of the seed-ordered `(formulation, n, seed, status,
/// iterations)` tuples. Wall times are excluded on purpose: the hash captures
/// exactly the part of a run that must reproduce bit-for-bit.
pub fn determinism_hash(records: &[TrialRecord]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for r in records {
        eat(
            format!(
                "{},{},{},{},{}\n",
                r.formulation, r.n, r.seed, r.status, r.iterations
            )
            .as_bytes(),
        );
    }
    h
}
