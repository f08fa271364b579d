use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mrta_cli::bench::{bench_table, corpus_inputs, GeneratedCorpus};
use mrta_cli::format::{parse_instance, serialize_instance};
use mrta_cli::solvers::SolverOptions;
use mrta_cli::verify::{summary_text, verify_family, Mutant, VerifyOptions, FAMILIES};
use mrta_cli::{cmd_solve, effective_seed, CliError, EXIT_USAGE};
use mrta_core::approx::{Epsilon, DEFAULT_SWAP_DEPTH};
use mrta_core::exact::export_lp;
use mrta_core::instances::{
    from_2kp, gen_bitcost, gen_from_3partition, gen_from_independent_set, gen_random, random_adjacency,
    GeneratorConfig, LocationConfig, SimpleGraph, TwoKpInstance,
};
use mrta_core::{Budget, BudgetKind, Cost, Instance};

#[derive(Parser)]
#[command(name = "mrta", version, about = "Multi-robot task allocation under budgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, short)]
        solver: String,
        /// Override the file's budget kind.
        #[arg(long)]
        kind: Option<BudgetKind>,
        /// Override the file's budget value.
        #[arg(long)]
        budget: Option<Cost>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        generator: Generator,
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Compare solvers on a corpus or a generated family; writes CSV.
    Bench(BenchArgs),
    /// Check cross-solver invariants on generated instances.
    Verify {
        /// Family to check, or `all`.
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/4")]
        eps: Epsilon,
        #[arg(long, hide = true)]
        mutant: Option<String>,
    },
    /// Write the integer program for an instance file in LP format.
    ExportLp {
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct Tuning {
    /// Accuracy for `ptas`.
    #[arg(long, default_value = "1/4")]
    eps: Epsilon,
    /// Swap depth for `set-packing`.
    #[arg(long, default_value_t = DEFAULT_SWAP_DEPTH)]
    depth: usize,
    /// Run approximations past their size caps.
    #[arg(long)]
    force: bool,
}

impl From<Tuning> for SolverOptions {
    fn from(t: Tuning) -> Self {
        SolverOptions { eps: t.eps, depth: t.depth, force: t.force }
    }
}

#[derive(Args, Clone)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    robots: usize,
    #[arg(long, default_value_t = 4)]
    tasks: usize,
    #[arg(long, default_value_t = 2)]
    q_max: usize,
    #[arg(long, default_value_t = 0)]
    cost_min: Cost,
    #[arg(long, default_value_t = 10)]
    cost_max: Cost,
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    uniform: bool,
}

#[derive(Subcommand)]
enum Generator {
    /// Seeded random costs and requirements.
    Random {
        #[command(flatten)]
        random: RandomArgs,
        #[arg(long, default_value = "total")]
        kind: BudgetKind,
        #[arg(long, default_value_t = 20)]
        budget: Cost,
    },
    /// Robots and tasks on a grid; costs are scaled distances.
    Location {
        #[command(flatten)]
        random: RandomArgs,
        #[arg(long, default_value_t = 10)]
        width: i64,
        #[arg(long, default_value_t = 10)]
        height: i64,
        #[arg(long, default_value_t = 1)]
        scale: i64,
        #[arg(long, default_value = "total")]
        kind: BudgetKind,
        #[arg(long, default_value_t = 20)]
        budget: Cost,
    },
    /// Independent-set reduction; edges as `1-2,2-3` over vertices 1..=V.
    Is {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value = "")]
        edges: String,
    },
    /// 3-partition reduction from a comma-separated multiset.
    #[command(name = "3partition")]
    ThreePartition {
        #[arg(long, value_delimiter = ',')]
        values: Vec<u64>,
    },
    /// Costs 1 on random adjacent pairs and large elsewhere; every task needs 3 robots.
    Bitcost {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        robots: usize,
        #[arg(long, default_value_t = 2)]
        tasks: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value = "total")]
        kind: BudgetKind,
    },
    /// Two-dimensional knapsack with unit profits; items and capacity as `a:b`.
    #[command(name = "2kp")]
    TwoKp {
        #[arg(long, value_delimiter = ',')]
        items: Vec<String>,
        #[arg(long)]
        capacity: String,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of `.inst` files; without it a random family is generated.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "exact,greedy")]
    solvers: Vec<String>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Write 0 in the time column so tables are reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[command(flatten)]
    random: RandomArgs,
    #[arg(long, value_delimiter = ',', default_value = "total")]
    kinds: Vec<BudgetKind>,
    /// Budget as a percentage of the most any allocation could spend.
    #[arg(long, default_value_t = 50)]
    budget_percent: u32,
    #[command(flatten)]
    tuning: Tuning,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pair(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("expected `a:b`, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn generator_config(r: &RandomArgs, location: Option<LocationConfig>) -> Result<GeneratorConfig, CliError> {
    Ok(GeneratorConfig {
        seed: effective_seed(r.seed)?,
        robots: r.robots,
        tasks: r.tasks,
        cost_range: (r.cost_min, r.cost_max),
        q_max: r.q_max,
        symmetric: r.symmetric,
        uniform: r.uniform,
        location,
    })
}

fn generate(g: &Generator) -> Result<(Instance, Budget), CliError> {
    Ok(match g {
        Generator::Random { random, kind, budget } => {
            (gen_random(&generator_config(random, None)?)?, Budget::new(*kind, *budget))
        }
        Generator::Location { random, width, height, scale, kind, budget } => {
            let loc = LocationConfig { width: *width, height: *height, scale: *scale };
            (gen_random(&generator_config(random, Some(loc))?)?, Budget::new(*kind, *budget))
        }
        Generator::Is { vertices, edges } => {
            let mut list = Vec::new();
            for e in edges.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (a, b) = e
                    .split_once('-')
                    .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                    .filter(|&(a, b)| a >= 1 && b >= 1)
                    .ok_or_else(|| CliError::Usage(format!("bad edge `{e}`")))?;
                list.push((a - 1, b - 1));
            }
            let r = gen_from_independent_set(&SimpleGraph::new(*vertices, list)?)?;
            (r.instance, r.budget)
        }
        Generator::ThreePartition { values } => gen_from_3partition(values)?,
        Generator::Bitcost { seed, robots, tasks, density, kind } => {
            let adj = random_adjacency(effective_seed(*seed)?, *robots, *tasks, *density);
            gen_bitcost(&adj, *tasks, *kind)?
        }
        Generator::TwoKp { items, capacity } => {
            let items = items.iter().filter(|s| !s.is_empty()).map(|s| pair(s)).collect::<Result<_, _>>()?;
            from_2kp(&TwoKpInstance { items, capacity: pair(capacity)? })?
        }
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve { file, solver, kind, budget, tuning } => {
            let text = read(&file)?;
            let over = match (kind, budget) {
                (None, None) => None,
                _ => {
                    let (_, b) = parse_instance(&text).map_err(|e| CliError::Usage(e.to_string()))?;
                    Some(Budget::new(kind.unwrap_or(b.kind), budget.unwrap_or(b.value)))
                }
            };
            cmd_solve(&text, &solver, over, &tuning.into())
        }
        Command::Gen { generator, output } => {
            let (inst, b) = generate(&generator)?;
            emit(output.as_ref(), &serialize_instance(&inst, b))?;
            Ok(String::new())
        }
        Command::Bench(a) => {
            let inputs = match &a.corpus {
                Some(dir) => corpus_inputs(dir)?,
                None => GeneratedCorpus {
                    count: a.count,
                    seed: effective_seed(a.random.seed)?,
                    robots: a.random.robots,
                    tasks: a.random.tasks,
                    q_max: a.random.q_max,
                    cost_range: (a.random.cost_min, a.random.cost_max),
                    symmetric: a.random.symmetric,
                    uniform: a.random.uniform,
                    kinds: a.kinds.clone(),
                    budget_percent: a.budget_percent,
                }
                .inputs()?,
            };
            let table = bench_table(&inputs, &a.solvers, &a.tuning.into(), !a.no_timing)?;
            emit(a.output.as_ref(), &table)?;
            Ok(String::new())
        }
        Command::Verify { family, trials, seed, eps, mutant } => {
            if trials == 0 {
                return Err(CliError::Usage("trials must be at least 1".into()));
            }
            let mutant = match mutant.as_deref() {
                None => None,
                Some("greedy-no-budget") => Some(Mutant::GreedyNoBudget),
                Some(other) => return Err(CliError::Usage(format!("unknown mutant `{other}`"))),
            };
            let families: Vec<&str> = match family.as_str() {
                "all" => FAMILIES.to_vec(),
                f if FAMILIES.contains(&f) => vec![f],
                f => return Err(CliError::Usage(format!("unknown family `{f}`; known: {}", FAMILIES.join(", ")))),
            };
            let opts = VerifyOptions { seed: effective_seed(seed)?, trials, eps, mutant };
            let summaries: Vec<_> = families.iter().map(|f| verify_family(f, &opts)).collect();
            let text = summary_text(&summaries);
            if summaries.iter().any(|s| s.failure.is_some()) {
                Err(CliError::Verification(text))
            } else {
                Ok(text)
            }
        }
        Command::ExportLp { file, output } => {
            let (inst, b) = parse_instance(&read(&file)?).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(output.as_ref(), &export_lp(&inst, b))?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            print!("{report}");
            ExitCode::from(mrta_cli::EXIT_VERIFY as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
