//! A feasibility-problem solver built around the Douglas-Rachford iteration.
//!
//! The problem "find a point in the intersection of sets `C_1, ..., C_N`" is
//! lifted to two sets in the product space `H^N`: the Cartesian product
//! `C = C_1 x ... x C_N` and the diagonal `D = {(x, ..., x)}`. Both have
//! cheap projections (blockwise, and blockwise averaging), so the two-set
//! Douglas-Rachford operator `T_{D,C} = (Id + R_C R_D) / 2` applies, and its
//! diagonal shadow carries the candidate solution.
//!
//! Convergence is guaranteed only for convex sets, but the same iteration is
//! an effective heuristic on hard nonconvex feasibility problems. This crate
//! ships the operator core, a catalog of closed-form projectors
//! ([`constraints`]), ready-made formulations for finding and completing
//! magic squares and solving Sudoku puzzles ([`formulations`]), and a seeded
//! multi-start benchmark harness ([`bench`]).
//!
//! ```
//! use drfeas::bench::random_start;
//! use drfeas::formulations::build_magic_integer;
//! use drfeas::{solve, SolveOptions, SolveStatus};
//!
//! let f = build_magic_integer(3, None).unwrap();
//! let x0 = random_start(f.shape(), 1);
//! let out = solve(f.sets(), &x0, &SolveOptions::default()).unwrap();
//! assert_eq!(out.status, SolveStatus::Solved);
//! let square = f.decode(&out.shadow);
//! assert!(f.verify(&square));
//! ```

pub mod bench;
pub mod constraints;
mod error;
pub mod formulations;
mod point;
mod projector;
mod solve;

pub use error::Error;
pub use point::{Point, ProductPoint, Shape};
pub use projector::{
    cyclic_dr_step, dr_step, project_diagonal, project_product, reflect, Projector,
};
pub use solve::{
    constraint_residuals, solve, solve_lifted, ReflectionOrder, SolveOptions, SolveOutcome,
    SolveStatus, StopRule,
};
