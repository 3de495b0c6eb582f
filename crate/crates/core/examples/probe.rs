// temporary probe: success rates and timings at desk scale
use std::time::Duration;
use drfeas::bench::{run_cell, MagicEncoding};
use drfeas::StopRule;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(String::as_str).unwrap_or("int");
    match which {
        "int" => {
            for n in [3usize, 4, 5, 6, 7] {
                let rule = StopRule::default().with_time_cap(Duration::from_secs(120));
                let t0 = std::time::Instant::now();
                let recs = run_cell(MagicEncoding::Integer, n, 20, &rule, 1000).unwrap();
                let solved = recs.iter().filter(|r| r.status == drfeas::SolveStatus::Solved).count();
                let times: Vec<f64> = recs.iter().filter(|r| r.status == drfeas::SolveStatus::Solved).map(|r| r.wall_time_s).collect();
                let iters: Vec<u64> = recs.iter().map(|r| r.iterations).collect();
                let mean = times.iter().sum::<f64>() / times.len().max(1) as f64;
                let maxt = times.iter().cloned().fold(0.0, f64::max);
                println!("int n={n}: {solved}/20 solved, mean {mean:.4}s max {maxt:.4}s, max iters {:?}, cell wall {:.1}s", iters.iter().max(), t0.elapsed().as_secs_f64());
            }
        }
        "bin" => {
            for (n, cap) in [(3usize, 60u64), (4, 120)] {
                let rule = StopRule::default().with_time_cap(Duration::from_secs(cap));
                let t0 = std::time::Instant::now();
                let recs = run_cell(MagicEncoding::Binary, n, 20, &rule, 2000).unwrap();
                let solved = recs.iter().filter(|r| r.status == drfeas::SolveStatus::Solved).count();
                let times: Vec<f64> = recs.iter().filter(|r| r.status == drfeas::SolveStatus::Solved).map(|r| r.wall_time_s).collect();
                let mean = times.iter().sum::<f64>() / times.len().max(1) as f64;
                let maxt = times.iter().cloned().fold(0.0, f64::max);
                println!("bin n={n}: {solved}/20 solved, mean {mean:.4}s max {maxt:.4}s, cell wall {:.1}s", t0.elapsed().as_secs_f64());
            }
        }
        "sudoku" => {
            use drfeas::bench::random_start;
            use drfeas::formulations::{build_sudoku_binary, parse_grid};
            let puzzle = parse_grid("9\n0 2 0 5 0 1 0 9 0\n8 0 0 2 0 3 0 0 6\n0 3 0 0 6 0 0 7 0\n0 0 1 0 0 0 6 0 0\n5 4 0 0 0 0 0 1 9\n0 0 2 0 0 0 7 0 0\n0 9 0 0 3 0 0 8 0\n2 0 0 8 0 4 0 0 7\n0 1 0 9 0 7 0 6 0\n").unwrap();
            let f = build_sudoku_binary(&puzzle).unwrap();
            for seed in 0..5u64 {
                let x0 = random_start(f.shape(), seed);
                let opts = drfeas::SolveOptions::default().with_rule(StopRule::default().with_time_cap(Duration::from_secs(300)));
                let out = drfeas::solve(f.sets(), &x0, &opts).unwrap();
                let g = f.decode(&out.shadow);
                println!("sudoku seed {seed}: {:?} iters {} time {:.3}s verified {}", out.status, out.iterations, out.elapsed.as_secs_f64(), f.verify(&g));
            }
        }
        _ => eprintln!("unknown probe"),
    }
}
