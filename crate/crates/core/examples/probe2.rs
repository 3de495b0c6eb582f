// temporary: per-seed n=3 integer behavior with a short cap
use std::time::Duration;

use drfeas::bench::random_start;
use drfeas::formulations::build_magic_integer;
use drfeas::{solve, SolveOptions, StopRule};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let f = build_magic_integer(n, None).unwrap();
    for seed in 1000..1020u64 {
        let x0 = random_start(f.shape(), seed);
        let opts = SolveOptions::default()
            .with_rule(StopRule::default().with_time_cap(Duration::from_secs(2)));
        let out = solve(f.sets(), &x0, &opts).unwrap();
        println!(
            "seed {seed}: {:?} iters {} t={:.3}s",
            out.status,
            out.iterations,
            out.elapsed.as_secs_f64()
        );
    }
}
