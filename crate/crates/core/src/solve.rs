//! The product-space Douglas-Rachford iteration driver.
//!
//! `solve` lifts a starting point onto the diagonal of `H^N`, iterates
//! `x_{n+1} = T_{D,C}(x_n)`, and stops when the componentwise-rounded shadow
//! `z = round(P_D(x_n))` satisfies `|z - P_{C_i}(z)| <= tolerance` for every
//! set, or when the wall-clock or iteration cap fires.

use std::time::{Duration, Instant};

use crate::error::Error;
use crate::point::{Point, ProductPoint};
use crate::projector::Projector;

/// Termination policy for [`solve`].
#[derive(Debug, Clone, Copy)]
pub struct StopRule {
    /// Per-set residual bound on the rounded shadow.
    pub tolerance: f64,
    /// Wall-clock budget for the iteration loop.
    pub time_cap: Duration,
    /// Optional hard bound on the number of iterations.
    pub iter_cap: Option<u64>,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            tolerance: 0.05,
            time_cap: Duration::from_secs(1800),
            iter_cap: None,
        }
    }
}

impl StopRule {
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_time_cap(mut self, time_cap: Duration) -> Self {
        self.time_cap = time_cap;
        self
    }

    pub fn with_iter_cap(mut self, iter_cap: u64) -> Self {
        self.iter_cap = Some(iter_cap);
        self
    }

    fn validate(&self) -> Result<(), Error> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::InvalidStopRule(format!(
                "tolerance must be positive and finite, got {}",
                self.tolerance
            )));
        }
        if self.time_cap.is_zero() {
            return Err(Error::InvalidStopRule("time cap must be positive".into()));
        }
        Ok(())
    }
}

/// How a solve run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    /// The rounded shadow passed the stop test for every set.
    Solved,
    /// The wall-clock cap fired first.
    TimedOut,
    /// The iteration cap fired first.
    IterCapped,
    /// An iterate stopped being finite.
    NumericalFailure,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Solved => "Solved",
            SolveStatus::TimedOut => "TimedOut",
            SolveStatus::IterCapped => "IterCapped",
            SolveStatus::NumericalFailure => "NumericalFailure",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which set the first reflection goes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionOrder {
    /// `T_{D,C}`: reflect through the diagonal first (the default).
    DiagonalFirst,
    /// `T_{C,D}`: reflect through the product set first.
    ProductFirst,
}

/// Full configuration of a solve run.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub rule: StopRule,
    pub order: ReflectionOrder,
    /// Componentwise rounding used by the stop test.
    pub round: fn(f64) -> f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            rule: StopRule::default(),
            order: ReflectionOrder::DiagonalFirst,
            round: f64::round,
        }
    }
}

impl SolveOptions {
    pub fn with_rule(mut self, rule: StopRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_order(mut self, order: ReflectionOrder) -> Self {
        self.order = order;
        self
    }
}

/// Result of a solve run. `point` is the last complete iterate and `shadow`
/// the rounded diagonal shadow at termination (the candidate solution when
/// `status` is `Solved`).
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub iterations: u64,
    pub elapsed: Duration,
    pub point: ProductPoint,
    pub shadow: Point,
}

/// Residual `|z - P_{C_i}(z)|` per set.
pub fn constraint_residuals(sets: &[Box<dyn Projector>], z: &Point) -> Vec<f64> {
    sets.iter().map(|s| s.project(z).distance(z)).collect()
}

fn passes_stop_test(sets: &[Box<dyn Projector>], z: &Point, scratch: &mut Point, tol: f64) -> bool {
    for set in sets {
        scratch.data_mut().copy_from_slice(z.data());
        set.project_in_place(scratch);
        if scratch.distance(z) > tol {
            return false;
        }
    }
    true
}

/// Lifts `x0` to `(x0, ..., x0)` on the diagonal and runs the iteration.
pub fn solve(
    sets: &[Box<dyn Projector>],
    x0: &Point,
    opts: &SolveOptions,
) -> Result<SolveOutcome, Error> {
    if !x0.is_finite() {
        return Err(Error::NonFinite);
    }
    let lifted = ProductPoint::lift(x0, sets.len())?;
    solve_lifted(sets, lifted, opts)
}

/// Runs the iteration from an explicit product-space point.
pub fn solve_lifted(
    sets: &[Box<dyn Projector>],
    x: ProductPoint,
    opts: &SolveOptions,
) -> Result<SolveOutcome, Error> {
    opts.rule.validate()?;
    if sets.len() != x.num_blocks() {
        return Err(Error::BlockCountMismatch {
            sets: sets.len(),
            blocks: x.num_blocks(),
        });
    }
    let shape = x.block_shape();
    for set in sets {
        if set.domain() != shape {
            return Err(Error::ShapeMismatch {
                expected: set.domain(),
                actual: shape,
            });
        }
    }
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }

    let n_sets = sets.len();
    let inv_n = 1.0 / n_sets as f64;
    let len = shape.len();
    let mut blocks = x.into_blocks();

    let mut mean = Point::zeros(shape);
    let mut z = Point::zeros(shape);
    let mut scratch = Point::zeros(shape);
    let mut work = Point::zeros(shape);

    let start = Instant::now();
    let mut iterations: u64 = 0;

    let finish = |status: SolveStatus, iterations: u64, blocks: Vec<Point>, z: Point| {
        Ok(SolveOutcome {
            status,
            iterations,
            elapsed: start.elapsed(),
            point: ProductPoint::new(blocks).expect("block count preserved"),
            shadow: z,
        })
    };

    loop {
        // P_D(x): the mean block, shared by the stop test and the D-reflection.
        {
            let m = mean.data_mut();
            m.fill(0.0);
            for b in &blocks {
                for (mv, bv) in m.iter_mut().zip(b.data()) {
                    *mv += bv;
                }
            }
            for mv in m.iter_mut() {
                *mv *= inv_n;
            }
        }

        if !mean.is_finite() {
            let z = mean.clone();
            return finish(SolveStatus::NumericalFailure, iterations, blocks, z);
        }

        for (zv, mv) in z.data_mut().iter_mut().zip(mean.data()) {
            *zv = (opts.round)(*mv);
        }
        if passes_stop_test(sets, &z, &mut scratch, opts.rule.tolerance) {
            return finish(SolveStatus::Solved, iterations, blocks, z.clone());
        }

        if start.elapsed() >= opts.rule.time_cap {
            return finish(SolveStatus::TimedOut, iterations, blocks, z.clone());
        }
        if let Some(cap) = opts.rule.iter_cap {
            if iterations >= cap {
                return finish(SolveStatus::IterCapped, iterations, blocks, z.clone());
            }
        }

        match opts.order {
            ReflectionOrder::DiagonalFirst => {
                // T_{D,C} blockwise: x_i <- x_i + P_i(2m - x_i) - m
                for (block, set) in blocks.iter_mut().zip(sets) {
                    {
                        let w = work.data_mut();
                        for ((wv, &mv), &bv) in
                            w.iter_mut().zip(mean.data()).zip(block.data().iter())
                        {
                            *wv = 2.0 * mv - bv;
                        }
                    }
                    set.project_in_place(&mut work);
                    let b = block.data_mut();
                    for ((bv, &pv), &mv) in b.iter_mut().zip(work.data()).zip(mean.data()) {
                        *bv += pv - mv;
                    }
                }
            }
            ReflectionOrder::ProductFirst => {
                // T_{C,D} blockwise: x_i <- x_i + 2 mean(P(x)) - mean(x) - P_i(x_i)
                let mut proj_mean = vec![0.0; len];
                let mut projections = Vec::with_capacity(n_sets);
                for (block, set) in blocks.iter().zip(sets) {
                    let p = set.project(block);
                    for (mv, pv) in proj_mean.iter_mut().zip(p.data()) {
                        *mv += pv;
                    }
                    projections.push(p);
                }
                for mv in &mut proj_mean {
                    *mv *= inv_n;
                }
                for (block, p) in blocks.iter_mut().zip(&projections) {
                    let b = block.data_mut();
                    for k in 0..len {
                        b[k] += 2.0 * proj_mean[k] - mean.data()[k] - p.data()[k];
                    }
                }
            }
        }

        iterations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::Hyperplane;
    use crate::formulations::{build_magic_integer, IntGrid};

    fn line(label: &str, a: (f64, f64), b: f64) -> Box<dyn Projector> {
        Box::new(Hyperplane::new(label, Point::from_vec(vec![a.0, a.1]), b).unwrap())
    }

    const LUOSHU: [[i64; 3]; 3] = [[4, 9, 2], [3, 5, 7], [8, 1, 6]];

    #[test]
    fn feasible_start_solves_at_iteration_zero() {
        let grid = IntGrid::new(3, LUOSHU.concat()).unwrap();
        let f = build_magic_integer(3, None).unwrap();
        let mut x0 = f.encode(&grid).unwrap();
        for (k, v) in x0.data_mut().iter_mut().enumerate() {
            *v += 0.019 * if k % 2 == 0 { 1.0 } else { -1.0 };
        }
        let out = solve(f.sets(), &x0, &SolveOptions::default()).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert_eq!(out.iterations, 0);
        assert_eq!(f.decode(&out.shadow), grid);
    }

    #[test]
    fn parallel_lines_time_out_with_growing_norm() {
        let sets = vec![line("y=0", (0.0, 1.0), 0.0), line("y=1", (0.0, 1.0), 1.0)];
        let opts = SolveOptions::default().with_rule(
            StopRule::default()
                .with_tolerance(1e-9)
                .with_time_cap(Duration::from_millis(50)),
        );
        let out = solve(&sets, &Point::from_vec(vec![0.3, 0.4]), &opts).unwrap();
        assert_eq!(out.status, SolveStatus::TimedOut);

        // the norm grows without bound: monitor a few hundred iterations directly
        let mut x = ProductPoint::lift(&Point::from_vec(vec![0.3, 0.4]), 2).unwrap();
        let mut norms = Vec::new();
        for _ in 0..300 {
            let capped = SolveOptions::default()
                .with_rule(StopRule::default().with_tolerance(1e-12).with_iter_cap(1));
            let out = solve_lifted(&sets, x, &capped).unwrap();
            x = out.point;
            norms.push(x.norm());
        }
        for w in norms[50..].windows(2) {
            assert!(w[1] > w[0], "norm not increasing after burn-in");
        }
    }

    #[test]
    fn crossing_lines_solve_to_the_intersection() {
        let sets = vec![line("y=0", (0.0, 1.0), 0.0), line("x=y", (1.0, -1.0), 0.0)];
        let opts = SolveOptions::default()
            .with_rule(StopRule::default().with_tolerance(1e-6).with_iter_cap(100));
        let out = solve(&sets, &Point::from_vec(vec![1.0, 1.0]), &opts).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert!(out.iterations < 100);
        assert!(out.shadow.norm() <= 1e-6);
    }

    #[test]
    fn iter_cap_reports_iter_capped() {
        let sets = vec![line("y=0", (0.0, 1.0), 0.0), line("y=1", (0.0, 1.0), 1.0)];
        let opts = SolveOptions::default()
            .with_rule(StopRule::default().with_tolerance(1e-9).with_iter_cap(10));
        let out = solve(&sets, &Point::from_vec(vec![0.3, 0.4]), &opts).unwrap();
        assert_eq!(out.status, SolveStatus::IterCapped);
        assert_eq!(out.iterations, 10);
    }

    #[test]
    fn invalid_rules_are_rejected() {
        let sets = vec![line("y=0", (0.0, 1.0), 0.0), line("y=1", (0.0, 1.0), 1.0)];
        let x0 = Point::from_vec(vec![0.0, 0.0]);
        let bad_tol = SolveOptions::default().with_rule(StopRule::default().with_tolerance(0.0));
        assert!(matches!(
            solve(&sets, &x0, &bad_tol),
            Err(Error::InvalidStopRule(_))
        ));
        let bad_x0 = Point::from_vec(vec![f64::NAN, 0.0]);
        assert!(matches!(
            solve(&sets, &bad_x0, &SolveOptions::default()),
            Err(Error::NonFinite)
        ));
    }
}
