//! Command-line front end: find a magic square, complete a partial one,
//! solve a Sudoku, run the randomized benchmark, and print the convex demos.
//!
//! Exit codes: 0 solved/ok, 2 solver gave up (timeout, iteration cap, or
//! numerical failure), 64 usage error, 65 bad input data, 73 unwritable
//! output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use drfeas::bench::{
    cumulative_csv, log_time_grid, run_plan, summarize, summary_csv, trials_csv, ExperimentPlan,
    MagicEncoding,
};
use drfeas::constraints::Hyperplane;
use drfeas::formulations::{
    build_magic_binary, build_magic_integer, build_sudoku_binary, build_sudoku_integer,
    format_grid_json, format_grid_text, parse_grid, Formulation, IntGrid,
};
use drfeas::{dr_step, solve, Point, Projector, SolveOptions, SolveStatus, StopRule};

const EXIT_UNSOLVED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_CANTCREAT: u8 = 73;

#[derive(Parser)]
#[command(name = "drfeas", version, about = "Douglas-Rachford feasibility solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Encoding {
    Int,
    Bin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Structured,
}

#[derive(Parser, Debug)]
struct SolverFlags {
    /// Seed for the random starting point.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock cap in seconds.
    #[arg(long = "time-cap", default_value_t = 1800.0)]
    time_cap: f64,
    /// Stop-test tolerance.
    #[arg(long, default_value_t = 0.05)]
    tolerance: f64,
    /// Optional iteration cap.
    #[arg(long = "iter-cap")]
    iter_cap: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Find a magic square of the given order.
    Find {
        /// Order of the square (any n >= 1 except 2).
        #[arg(short = 'n', long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Encoding::Int)]
        formulation: Encoding,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Write the grid here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Complete a partially filled magic square read from a grid file.
    Complete {
        /// Grid file (plain text or JSON); 0 marks a blank cell.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Encoding::Int)]
        formulation: Encoding,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve a Sudoku puzzle read from a grid file.
    Sudoku {
        #[arg(long)]
        input: PathBuf,
        /// The binary one-hot encoding is the effective one for Sudoku.
        #[arg(long, value_enum, default_value_t = Encoding::Bin)]
        formulation: Encoding,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the randomized multi-start benchmark and write CSV outputs.
    Bench {
        /// Comma-separated list of orders.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Encoding::Int])]
        formulations: Vec<Encoding>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "time-cap", default_value_t = 1800.0)]
        time_cap: f64,
        #[arg(long = "iter-cap")]
        iter_cap: Option<u64>,
        /// Directory receiving trials.csv, summary.csv, and cumfreq.csv.
        #[arg(long, default_value = ".")]
        output: PathBuf,
    },
    /// Iterate the two-line convex cases and print the trajectories.
    DemoConvex {
        #[arg(long, default_value_t = 30)]
        iterations: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Find {
            order,
            formulation,
            solver,
            format,
            output,
        } => cmd_find(order, formulation, &solver, format, output.as_deref()),
        Command::Complete {
            input,
            formulation,
            solver,
            format,
            output,
        } => cmd_complete(&input, formulation, &solver, format, output.as_deref()),
        Command::Sudoku {
            input,
            formulation,
            solver,
            format,
            output,
        } => cmd_sudoku(&input, formulation, &solver, format, output.as_deref()),
        Command::Bench {
            orders,
            formulations,
            trials,
            seed,
            time_cap,
            iter_cap,
            output,
        } => cmd_bench(orders, formulations, trials, seed, time_cap, iter_cap, &output),
        Command::DemoConvex { iterations } => cmd_demo_convex(iterations),
    };
    ExitCode::from(code)
}

fn stop_rule(flags: &SolverFlags) -> Result<StopRule, u8> {
    if !(flags.tolerance > 0.0) {
        eprintln!("error: tolerance must be positive");
        return Err(EXIT_USAGE);
    }
    if !(flags.time_cap > 0.0) {
        eprintln!("error: time cap must be positive");
        return Err(EXIT_USAGE);
    }
    Ok(StopRule {
        tolerance: flags.tolerance,
        time_cap: Duration::from_secs_f64(flags.time_cap),
        iter_cap: flags.iter_cap,
    })
}

/// Runs the solver against a formulation, verifies the decoded grid, and
/// emits it. Never emits an unverified grid with exit 0.
fn solve_and_emit(
    f: &Formulation,
    flags: &SolverFlags,
    rule: StopRule,
    kind: &str,
    format: OutputFormat,
    output: Option<&Path>,
) -> u8 {
    let x0 = drfeas::bench::random_start(f.shape(), flags.seed);
    let opts = SolveOptions::default().with_rule(rule);
    let out = match solve(f.sets(), &x0, &opts) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_UNSOLVED;
        }
    };
    if out.status != SolveStatus::Solved {
        eprintln!(
            "no solution within the caps (status {}, {} iterations, {:.3} s)",
            out.status,
            out.iterations,
            out.elapsed.as_secs_f64()
        );
        return EXIT_UNSOLVED;
    }
    let grid = f.decode(&out.shadow);
    if !f.verify(&grid) {
        eprintln!("error: solver returned a grid that fails exact verification");
        return EXIT_UNSOLVED;
    }
    eprintln!(
        "solved in {} iterations, {:.3} s (seed {})",
        out.iterations,
        out.elapsed.as_secs_f64(),
        flags.seed
    );
    emit_grid(&grid, kind, format, output)
}

fn emit_grid(grid: &IntGrid, kind: &str, format: OutputFormat, output: Option<&Path>) -> u8 {
    let text = match format {
        OutputFormat::Text => format_grid_text(grid),
        OutputFormat::Structured => {
            let mut s = format_grid_json(kind, grid);
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let n = grid.n();
            let mut s = String::new();
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| grid.get(i, j).to_string()).collect();
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
    };
    match output {
        None => {
            print!("{text}");
            0
        }
        Some(path) => match fs::write(path, text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_CANTCREAT
            }
        },
    }
}

fn cmd_find(
    order: usize,
    formulation: Encoding,
    flags: &SolverFlags,
    format: OutputFormat,
    output: Option<&Path>,
) -> u8 {
    let rule = match stop_rule(flags) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if order == 2 {
        eprintln!("error: no magic square of order 2 exists (equal row and column sums through a shared corner force equal cells)");
        return EXIT_USAGE;
    }
    let built = match formulation {
        Encoding::Int => build_magic_integer(order, None),
        Encoding::Bin => build_magic_binary(order, None),
    };
    let f = match built {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    solve_and_emit(&f, flags, rule, "magic", format, output)
}

fn read_grid(path: &Path) -> Result<IntGrid, u8> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(EXIT_DATA);
        }
    };
    parse_grid(&text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_DATA
    })
}

fn cmd_complete(
    input: &Path,
    formulation: Encoding,
    flags: &SolverFlags,
    format: OutputFormat,
    output: Option<&Path>,
) -> u8 {
    let rule = match stop_rule(flags) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let prefill = match read_grid(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let built = match formulation {
        Encoding::Int => build_magic_integer(prefill.n(), Some(&prefill)),
        Encoding::Bin => build_magic_binary(prefill.n(), Some(&prefill)),
    };
    let f = match built {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    };
    solve_and_emit(&f, flags, rule, "magic", format, output)
}

fn cmd_sudoku(
    input: &Path,
    formulation: Encoding,
    flags: &SolverFlags,
    format: OutputFormat,
    output: Option<&Path>,
) -> u8 {
    let rule = match stop_rule(flags) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let puzzle = match read_grid(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let built = match formulation {
        Encoding::Int => build_sudoku_integer(&puzzle),
        Encoding::Bin => build_sudoku_binary(&puzzle),
    };
    let f = match built {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    };
    solve_and_emit(&f, flags, rule, "sudoku", format, output)
}

fn cmd_bench(
    orders: Vec<usize>,
    formulations: Vec<Encoding>,
    trials: usize,
    seed: u64,
    time_cap: f64,
    iter_cap: Option<u64>,
    output: &Path,
) -> u8 {
    if trials == 0 {
        eprintln!("error: trials must be at least 1");
        return EXIT_USAGE;
    }
    if !(time_cap > 0.0) {
        eprintln!("error: time cap must be positive");
        return EXIT_USAGE;
    }
    let plan = ExperimentPlan {
        orders,
        formulations: formulations
            .iter()
            .map(|f| match f {
                Encoding::Int => MagicEncoding::Integer,
                Encoding::Bin => MagicEncoding::Binary,
            })
            .collect(),
        trials_per_cell: trials,
        time_cap: Duration::from_secs_f64(time_cap),
        iter_cap,
        base_seed: seed,
    };
    if let Err(e) = fs::create_dir_all(output) {
        eprintln!("error: cannot create {}: {e}", output.display());
        return EXIT_CANTCREAT;
    }

    let mut records = Vec::new();
    for cell in run_plan(&plan) {
        match cell.outcome {
            Ok(mut recs) => records.append(&mut recs),
            Err(e) => eprintln!("cell {} n={} skipped: {e}", cell.formulation, cell.n),
        }
    }

    let grid = log_time_grid(time_cap);
    let files = [
        ("trials.csv", trials_csv(&records)),
        (
            "summary.csv",
            match summarize(&records) {
                Ok(rows) => summary_csv(&rows),
                Err(_) => {
                    "formulation,n,trials,solved,success_pct,mean_time_s,max_time_s\n".to_string()
                }
            },
        ),
        ("cumfreq.csv", cumulative_csv(&records, &grid)),
    ];
    for (name, contents) in files {
        let path = output.join(name);
        if let Err(e) = fs::write(&path, contents) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_CANTCREAT;
        }
    }

    if let Ok(rows) = summarize(&records) {
        println!(
            "{:<11} {:>3} {:>6} {:>6} {:>8} {:>10} {:>10}",
            "formulation", "n", "trials", "solved", "succ%", "mean(s)", "max(s)"
        );
        for r in rows {
            println!(
                "{:<11} {:>3} {:>6} {:>6} {:>8.1} {:>10} {:>10}",
                r.formulation,
                r.n,
                r.trials,
                r.solved,
                r.success_pct,
                r.mean_time_s.map_or("-".into(), |t| format!("{t:.4}")),
                r.max_time_s.map_or("-".into(), |t| format!("{t:.4}")),
            );
        }
    }
    0
}

/// Prints the convex two-set trajectories: crossing lines draw the iterates
/// and their shadows into the intersection, parallel lines push the norm out
/// to infinity.
fn cmd_demo_convex(iterations: usize) -> u8 {
    let x_axis = Hyperplane::new("y=0", Point::from_vec(vec![0.0, 1.0]), 0.0).unwrap();
    let diagonal = Hyperplane::new("x=y", Point::from_vec(vec![1.0, -1.0]), 0.0).unwrap();
    let shifted = Hyperplane::new("y=1", Point::from_vec(vec![0.0, 1.0]), 1.0).unwrap();

    println!("crossing lines y=0 and x=y from (1, 1): iterates converge, shadows land on the intersection {{(0, 0)}}");
    println!("{:>4} {:>22} {:>22}", "k", "x_k", "P_A(x_k)");
    let mut x = Point::from_vec(vec![1.0, 1.0]);
    for k in 0..=iterations {
        let shadow = x_axis.project(&x);
        println!(
            "{k:>4} ({:>9.6}, {:>9.6}) ({:>9.6}, {:>9.6})",
            x.data()[0],
            x.data()[1],
            shadow.data()[0],
            shadow.data()[1]
        );
        x = dr_step(&x_axis, &diagonal, &x).expect("shapes agree");
    }

    println!();
    println!("parallel lines y=0 and y=1 from (1, 1): the intersection is empty and the iterates run off to infinity");
    println!("{:>4} {:>22} {:>12}", "k", "x_k", "|x_k|");
    let mut x = Point::from_vec(vec![1.0, 1.0]);
    for k in 0..=iterations {
        println!(
            "{k:>4} ({:>9.4}, {:>9.4}) {:>12.4}",
            x.data()[0],
            x.data()[1],
            x.norm()
        );
        x = dr_step(&x_axis, &shifted, &x).expect("shapes agree");
    }
    0
}
