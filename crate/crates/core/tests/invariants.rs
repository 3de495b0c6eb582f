//! Property-style checks of the library's structural invariants, driven by
//! seeded random inputs and independent numeric oracles.

mod common;

use std::time::Duration;

use rand::Rng;

use drfeas::constraints::{Hyperplane, IndexSelection, Multiset, SumProjector};
use drfeas::formulations::{
    build_magic_binary, build_magic_integer, build_sudoku_binary, build_sudoku_integer,
    magic_constant, IntGrid,
};
use drfeas::{
    dr_step, project_diagonal, project_product, reflect, solve, Point, ProductPoint, Projector,
    Shape, SolveOptions, SolveStatus, StopRule,
};

use common::{golden_section_min, rng, uniform, LUOSHU, SUDOKU_SOLUTION};

fn random_point(shape: Shape, r: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64) -> Point {
    Point::new(shape, (0..shape.len()).map(|_| uniform(r, lo, hi)).collect()).unwrap()
}

fn max_abs_diff(a: &Point, b: &Point) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Every projector of every formulation, plus a plain hyperplane.
fn catalog() -> Vec<(String, Box<dyn Projector>)> {
    let mut out: Vec<(String, Box<dyn Projector>)> = Vec::new();
    let luoshu = IntGrid::new(3, LUOSHU.to_vec()).unwrap();
    let sudoku = IntGrid::new(9, SUDOKU_SOLUTION.concat()).unwrap();
    let formulations = vec![
        build_magic_integer(4, None).unwrap(),
        build_magic_integer(3, Some(&luoshu)).unwrap(),
        build_magic_binary(3, None).unwrap(),
        build_sudoku_integer(&sudoku).unwrap(),
        build_sudoku_binary(&sudoku).unwrap(),
    ];
    for f in formulations {
        let name = f.name().to_string();
        for (idx, set) in f.into_sets().into_iter().enumerate() {
            out.push((format!("{name}/{idx}/{}", set.label()), set));
        }
    }
    out.push((
        "hyperplane".into(),
        Box::new(Hyperplane::new("h", Point::from_vec(vec![1.0, -2.0, 0.5]), 3.0).unwrap()),
    ));
    out
}

#[test]
fn projector_idempotence_on_random_inputs() {
    let mut r = rng(101);
    for (name, set) in catalog() {
        for _ in 0..1000 {
            let x = random_point(set.domain(), &mut r, -2.0, 18.0);
            let once = set.project(&x);
            let twice = set.project(&once);
            assert!(
                max_abs_diff(&once, &twice) <= 1e-12,
                "projector {name} not idempotent"
            );
        }
    }
}

#[test]
fn reflection_is_an_involution_on_affine_sets() {
    let mut r = rng(102);
    let shape = Shape::Matrix(3);
    let sum_rows = SumProjector::new(
        "rows",
        shape,
        (0..3).map(|i| IndexSelection::matrix_row(3, i)).collect(),
        15.0,
    )
    .unwrap();
    let plane = Hyperplane::new("h", Point::from_vec(vec![2.0, -1.0, 0.25]), 1.0).unwrap();
    for _ in 0..1000 {
        let x = random_point(shape, &mut r, -5.0, 5.0);
        let rr = reflect(&sum_rows, &reflect(&sum_rows, &x).unwrap()).unwrap();
        assert!(max_abs_diff(&x, &rr) <= 1e-12);

        let v = random_point(Shape::Vector(3), &mut r, -5.0, 5.0);
        let vv = reflect(&plane, &reflect(&plane, &v).unwrap()).unwrap();
        assert!(max_abs_diff(&v, &vv) <= 1e-12);
    }
}

#[test]
fn convex_projectors_and_dr_operator_are_nonexpansive() {
    let mut r = rng(103);
    for _ in 0..1000 {
        let m = 2 + (r.random::<u32>() as usize) % 4;
        let shape = Shape::Vector(m);
        let a = Hyperplane::new("a", random_point(shape, &mut r, -1.0, 1.0), uniform(&mut r, -2.0, 2.0));
        let b = Hyperplane::new("b", random_point(shape, &mut r, -1.0, 1.0), uniform(&mut r, -2.0, 2.0));
        let (a, b) = match (a, b) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let x = random_point(shape, &mut r, -10.0, 10.0);
        let y = random_point(shape, &mut r, -10.0, 10.0);
        let sep = x.distance(&y);
        assert!(a.project(&x).distance(&a.project(&y)) <= sep + 1e-12);
        let tx = dr_step(&a, &b, &x).unwrap();
        let ty = dr_step(&a, &b, &y).unwrap();
        assert!(tx.distance(&ty) <= sep + 1e-12);
    }

    // the diagonal projection is nonexpansive too
    for _ in 0..200 {
        let shape = Shape::Vector(3);
        let make = |r: &mut rand_chacha::ChaCha8Rng| {
            ProductPoint::new((0..4).map(|_| random_point(shape, r, -5.0, 5.0)).collect()).unwrap()
        };
        let x = make(&mut r);
        let y = make(&mut r);
        let dist = |a: &ProductPoint, b: &ProductPoint| {
            a.blocks()
                .iter()
                .zip(b.blocks())
                .map(|(p, q)| p.distance(q).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let px = project_diagonal(&x);
        let py = project_diagonal(&y);
        assert!(dist(&px, &py) <= dist(&x, &y) + 1e-12);
    }
}

#[test]
fn product_space_membership_matches_plain_membership() {
    let f = build_magic_integer(3, None).unwrap();
    let luoshu = IntGrid::new(3, LUOSHU.to_vec()).unwrap();
    let x = f.encode(&luoshu).unwrap();

    // x in every C_i ...
    for set in f.sets() {
        assert!(set.project(&x).distance(&x) <= 1e-12);
    }
    // ... if and only if (x, ..., x) in C and D
    let lifted = ProductPoint::lift(&x, f.sets().len()).unwrap();
    let pc = project_product(f.sets(), &lifted).unwrap();
    assert_eq!(pc, lifted);
    assert_eq!(project_diagonal(&lifted), lifted);

    // a perturbed point fails on both sides
    let mut bad = x.clone();
    bad.data_mut()[0] += 0.5;
    assert!(f.sets().iter().any(|s| s.project(&bad).distance(&bad) > 0.1));
    let lifted_bad = ProductPoint::lift(&bad, f.sets().len()).unwrap();
    assert_ne!(project_product(f.sets(), &lifted_bad).unwrap(), lifted_bad);
}

#[test]
fn diagonal_projection_minimizes_total_squared_distance() {
    let mut r = rng(104);
    for _ in 0..50 {
        let shape = Shape::Vector(4);
        let blocks: Vec<Point> = (0..3).map(|_| random_point(shape, &mut r, -3.0, 3.0)).collect();
        let x = ProductPoint::new(blocks.clone()).unwrap();
        let mean = project_diagonal(&x).blocks()[0].clone();
        // coordinatewise, the mean must match a 1-d golden-section minimizer
        for c in 0..shape.len() {
            let vals: Vec<f64> = blocks.iter().map(|b| b.data()[c]).collect();
            let objective =
                |t: f64| -> f64 { vals.iter().map(|v| (v - t) * (v - t)).sum() };
            let best = golden_section_min(-4.0, 4.0, objective);
            assert!(
                (best - mean.data()[c]).abs() <= 1e-6,
                "mean {} vs golden-section {best}",
                mean.data()[c]
            );
        }
    }
}

#[test]
fn sum_projection_hits_the_target_with_constant_residual() {
    let mut r = rng(105);
    let shape = Shape::Matrix(5);
    let c = magic_constant(5) as f64;
    for _ in 0..200 {
        let x = random_point(shape, &mut r, -10.0, 10.0);
        let sel = IndexSelection::matrix_row(5, 2);
        let y = drfeas::constraints::project_sum_hyperplane(&sel, c, &x).unwrap();
        let sum: f64 = sel.indices().iter().map(|&i| y.data()[i]).sum();
        assert!((sum - c).abs() <= 1e-10 * sel.len() as f64);
        // the residual x - P(x) is constant on the selection, zero elsewhere
        let residuals: Vec<f64> = sel
            .indices()
            .iter()
            .map(|&i| x.data()[i] - y.data()[i])
            .collect();
        for w in residuals.windows(2) {
            assert!((w[0] - w[1]).abs() <= 1e-12);
        }
        for i in 0..shape.len() {
            if !sel.indices().contains(&i) {
                assert_eq!(x.data()[i], y.data()[i]);
            }
        }
    }
}

#[test]
fn projections_beat_random_members_of_their_sets() {
    // weak minimality screen: the projection is at least as close as 1000
    // random members of the constraint set
    use rand::seq::SliceRandom;
    let mut r = rng(106);
    let vals = Multiset::one_to(9);
    for _ in 0..20 {
        let x: Vec<f64> = (0..9).map(|_| uniform(&mut r, -2.0, 11.0)).collect();
        let proj = drfeas::constraints::project_permutation(&vals, &x).unwrap();
        let d_proj: f64 = proj.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
        for _ in 0..1000 {
            let mut member: Vec<f64> = (1..=9).map(|v| v as f64).collect();
            member.shuffle(&mut r);
            let d: f64 = member.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
            assert!(d_proj <= d + 1e-12);
        }
    }
}

#[test]
fn floor_counts_and_pillars_have_the_right_structure() {
    let mut r = rng(107);
    let n = 3;
    let shape = Shape::Cube { n, depth: n * n };
    for _ in 0..100 {
        let x = random_point(shape, &mut r, -0.5, 1.5);
        let floors = drfeas::constraints::project_floor_counts(n, &x).unwrap();
        for k in 0..n * n {
            let mut ones = 0;
            for i in 0..n {
                for j in 0..n {
                    let v = floors.data()[shape.idx3(i, j, k)];
                    assert!(v == 0.0 || v == 1.0);
                    if v == 1.0 {
                        ones += 1;
                    }
                }
            }
            assert_eq!(ones, n * n - k, "floor {k}");
        }

        let pillars = drfeas::constraints::project_pillars(n, &x).unwrap();
        for i in 0..n {
            for j in 0..n {
                let col: Vec<f64> = (0..n * n)
                    .map(|k| pillars.data()[shape.idx3(i, j, k)])
                    .collect();
                assert_eq!(col[0], 1.0);
                for w in col.windows(2) {
                    assert!(w[0] >= w[1], "pillar not monotone");
                }
            }
        }
    }
}

#[test]
fn encode_decode_are_mutually_inverse() {
    let luoshu = IntGrid::new(3, LUOSHU.to_vec()).unwrap();
    let fig9 = IntGrid::new(
        4,
        vec![11, 14, 5, 4, 16, 2, 9, 7, 1, 15, 8, 10, 6, 3, 12, 13],
    )
    .unwrap();
    let sudoku = IntGrid::new(9, SUDOKU_SOLUTION.concat()).unwrap();

    for f in [
        build_magic_integer(3, None).unwrap(),
        build_magic_binary(3, None).unwrap(),
    ] {
        let p = f.encode(&luoshu).unwrap();
        assert_eq!(f.decode(&p), luoshu);
    }
    for f in [
        build_magic_integer(4, None).unwrap(),
        build_magic_binary(4, None).unwrap(),
    ] {
        let p = f.encode(&fig9).unwrap();
        assert_eq!(f.decode(&p), fig9);
    }
    for f in [
        build_sudoku_integer(&IntGrid::blank(9)).unwrap(),
        build_sudoku_binary(&IntGrid::blank(9)).unwrap(),
    ] {
        let p = f.encode(&sudoku).unwrap();
        assert_eq!(f.decode(&p), sudoku);
    }

    // pillar identity: the stack heights reproduce the cell values
    let f = build_magic_binary(3, None).unwrap();
    let p = f.encode(&luoshu).unwrap();
    for (cell, pillar) in luoshu.cells().iter().zip(p.data().chunks(9)) {
        assert_eq!(pillar.iter().sum::<f64>(), *cell as f64);
    }
}

#[test]
fn solved_runs_decode_to_exactly_verified_grids() {
    let opts = SolveOptions::default().with_rule(
        StopRule::default().with_time_cap(Duration::from_secs(60)),
    );
    for f in [
        build_magic_integer(3, None).unwrap(),
        build_magic_binary(3, None).unwrap(),
    ] {
        for seed in 0..5u64 {
            let x0 = drfeas::bench::random_start(f.shape(), seed);
            let out = solve(f.sets(), &x0, &opts).unwrap();
            assert_eq!(out.status, SolveStatus::Solved);
            let grid = f.decode(&out.shadow);
            assert!(f.verify(&grid), "{} seed {seed}", f.name());
            // the rounded shadow is fixed by every projector exactly
            for set in f.sets() {
                assert!(set.project(&out.shadow).distance(&out.shadow) <= 1e-12);
            }
        }
    }
}

#[test]
fn luoshu_prefill_forces_rapid_convergence_to_itself() {
    let luoshu = IntGrid::new(3, LUOSHU.to_vec()).unwrap();
    let f = build_magic_integer(3, Some(&luoshu)).unwrap();
    for seed in 0..5u64 {
        let x0 = drfeas::bench::random_start(f.shape(), seed);
        let out = solve(f.sets(), &x0, &SolveOptions::default()).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert!(out.iterations <= 50, "took {} iterations", out.iterations);
        assert_eq!(f.decode(&out.shadow), luoshu);
    }
}
