use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use predictable::demo::{run_demo, DemoParams, DEMOS};
use predictable::eval::ObsBudget;
use predictable::suite::{run_suite, Group, SuiteConfig};

const USAGE_ERROR: u8 = 64;

/// Guarded recursion demos and law suites.
#[derive(Parser)]
#[command(name = "predictable", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one demo and check its declared terminator.
    Run {
        /// Demo name; see `list`.
        demo: String,
        #[command(flatten)]
        knobs: Knobs,
        /// One JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run law-suite groups and print one JSON object per item.
    Suite {
        /// gwbeq, closure, invariance, monoid, laws, fusion, transpose, inverse, or all.
        #[arg(long, default_value = "all")]
        filter: String,
        #[command(flatten)]
        knobs: Knobs,
        /// Accepted for symmetry; suite output is always JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// List demos with their expected terminators.
    List,
}

#[derive(Args)]
struct Knobs {
    /// Observation depth.
    #[arg(long)]
    depth: Option<usize>,
    /// Fuel: the number of Later forces allowed.
    #[arg(long)]
    fuel: Option<u64>,
    #[arg(long, env = "GUARDED_SEED")]
    seed: Option<u64>,
    /// Reader environment (the column index for `transpose`).
    #[arg(long, allow_negative_numbers = true)]
    env: Option<i64>,
    /// Initial state for the Update demos.
    #[arg(long, allow_negative_numbers = true)]
    s0: Option<i64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run { demo, knobs, json } => run(&demo, knobs, json),
        Command::Suite { filter, knobs, .. } => suite(&filter, knobs),
        Command::List => {
            for d in DEMOS {
                println!("{:<17} {:<10} {}", d.name, d.expects.label(), d.about);
            }
            ExitCode::SUCCESS
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("\nFor more information, try '--help'.");
    ExitCode::from(USAGE_ERROR)
}

fn run(demo: &str, k: Knobs, json: bool) -> ExitCode {
    let d = DemoParams::default();
    let params = DemoParams {
        depth: k.depth.unwrap_or(d.depth),
        fuel: k.fuel.unwrap_or(d.fuel),
        seed: k.seed.unwrap_or(d.seed),
        env: k.env.unwrap_or(d.env),
        s0: k.s0.unwrap_or(d.s0),
    };
    match run_demo(demo, &params) {
        Ok(r) => {
            if json {
                println!("{}", r.json());
            } else {
                print!("{}", r.text());
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => usage_error(&e),
    }
}

fn suite(filter: &str, k: Knobs) -> ExitCode {
    let Some(groups) = Group::parse(filter) else {
        return usage_error(&format!("unknown suite filter `{filter}`"));
    };
    if k.env.is_some() || k.s0.is_some() {
        return usage_error("--env and --s0 apply to `run` only");
    }
    let seed = k.seed.unwrap_or(0);
    let cfg = match (k.depth, k.fuel) {
        (None, None) => SuiteConfig::new(seed),
        (d, f) => {
            let base = SuiteConfig::new(seed).budgets[0];
            SuiteConfig::with_base(seed, ObsBudget::new(d.unwrap_or(base.depth), f.unwrap_or(base.fuel)))
        }
    };
    let items = run_suite(&groups, &cfg);
    let bad = items.iter().filter(|i| !i.ok()).count();
    for i in &items {
        println!("{}", i.json());
    }
    eprintln!("{} items, {} as expected, {} unexpected", items.len(), items.len() - bad, bad);
    if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
