// temporary: verify the exact configurations the cli tests pin
use std::time::Duration;

use drfeas::bench::random_start;
use drfeas::formulations::{build_magic_binary, build_magic_integer, IntGrid};
use drfeas::{solve, SolveOptions, StopRule};

fn main() {
    let opts = |secs| {
        SolveOptions::default().with_rule(StopRule::default().with_time_cap(Duration::from_secs(secs)))
    };
    for seed in 0..10u64 {
        let f = build_magic_integer(4, None).unwrap();
        let out = solve(f.sets(), &random_start(f.shape(), seed), &opts(10)).unwrap();
        println!("int n=4 seed {seed}: {:?} iters {}", out.status, out.iterations);
    }
    for seed in [1u64, 2] {
        let f = build_magic_integer(3, None).unwrap();
        let out = solve(f.sets(), &random_start(f.shape(), seed), &opts(10)).unwrap();
        println!("int n=3 seed {seed}: {:?} iters {}", out.status, out.iterations);
    }
    let f = build_magic_binary(3, None).unwrap();
    let out = solve(f.sets(), &random_start(f.shape(), 3), &opts(10)).unwrap();
    println!("bin n=3 seed 3: {:?} iters {}", out.status, out.iterations);

    let mut partial = IntGrid::new(3, vec![4, 9, 2, 3, 5, 7, 8, 1, 6]).unwrap();
    partial.set(2, 1, 0);
    let f = build_magic_integer(3, Some(&partial)).unwrap();
    let out = solve(f.sets(), &random_start(f.shape(), 1), &opts(10)).unwrap();
    println!("complete blank seed 1: {:?} iters {}", out.status, out.iterations);
}
