use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gpsort::harness::{
    self, scaling_experiment, stagnation_experiment, success_probability_sweep, summary_table,
    verify_suite, ExperimentKind, ExperimentSpec, HarnessError,
};
use gpsort::{InitMode, Measure, Variant};

#[derive(Parser)]
#[command(
    name = "gpsort",
    version,
    about = "(1+1) GP* on SORTING: runs, campaigns and exact checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One seeded run.
    Run(Common),
    /// Median evaluations versus n, with a log-log fit.
    Scale(Common),
    /// Worst-case start trees: exact (single) or budgeted (multi).
    Stagnate(Common),
    /// Exact one-step success probabilities of near-optimal trees.
    Probe(Common),
    /// Oracle cross-checks and the lower-bound case report.
    Verify(Common),
    /// Measure-by-variant grid from experiment CSVs.
    Summary {
        /// CSV files written by scale/stagnate.
        inputs: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Inv,
    Ham,
    Run,
    Las,
    Exc,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Single,
    Multi,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Grow,
    Perm,
    W1,
    W2,
}

#[derive(Args)]
struct Common {
    /// Single terminal-set size.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated, strictly increasing sizes.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<usize>,
    #[arg(long, value_enum, default_value = "inv")]
    measure: MeasureArg,
    #[arg(long, value_enum, default_value = "single")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "perm")]
    init: InitArg,
    /// Fitness evaluations per run, the initial one included.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; plot data files go next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = harness::default_workers())]
    workers: usize,
}

impl Common {
    fn spec(&self, kind: ExperimentKind, default_n: &[usize]) -> ExperimentSpec {
        let n_values = match (self.n, self.n_list.is_empty()) {
            (Some(n), _) => vec![n],
            (None, false) => self.n_list.clone(),
            (None, true) => default_n.to_vec(),
        };
        let mut spec = ExperimentSpec::new(kind, n_values);
        spec.trials = self.trials;
        spec.budget = self.budget;
        spec.base_seed = self.seed;
        spec.measure = match self.measure {
            MeasureArg::Inv => Measure::Inv,
            MeasureArg::Ham => Measure::Ham,
            MeasureArg::Run => Measure::Run,
            MeasureArg::Las => Measure::Las,
            MeasureArg::Exc => Measure::Exc,
        };
        spec.variant = match self.variant {
            VariantArg::Single => Variant::Single,
            VariantArg::Multi => Variant::Multi,
        };
        spec.init = match self.init {
            InitArg::Grow => InitMode::Grow,
            InitArg::Perm => InitMode::PermComb,
            InitArg::W1 => InitMode::W1,
            InitArg::W2 => InitMode::W2,
        };
        spec.output = self.out.clone();
        spec.workers = self.workers;
        spec
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<bool, HarnessError> {
    match command {
        Command::Run(args) => {
            let spec = args.spec(ExperimentKind::Run, &[8]);
            spec.validate()?;
            let n = spec.n_values[0];
            let record = gpsort::run(&spec.run_config(n, 0))?;
            println!(
                "n={n} {} {} init={} seed={}",
                spec.measure,
                spec.variant,
                spec.init.name(),
                record.seed
            );
            println!(
                "evaluations={} hit_optimum={} fitness {} -> {} improvements={} max_leaves={}",
                record.evaluations_used,
                record.hit_optimum,
                record.initial_fitness.value,
                record.final_fitness.value,
                record.improvements.len(),
                record.max_tree_size_observed
            );
            println!("final leaves {:?}", record.final_tree.leaves());
            if let Some(path) = &spec.output {
                let row = harness::RunRow::from_record(&spec.experiment_id(), &spec, n, 0, &record);
                harness::write_csv(path, &[row])?;
            }
            Ok(true)
        }
        Command::Scale(args) => {
            let spec = args.spec(ExperimentKind::Scale, &[4, 8, 16, 32]);
            let report = scaling_experiment(&spec)?;
            for &(n, median) in &report.medians {
                let hits = report.rows_for(n).filter(|r| r.hit_optimum).count();
                let trials = report.rows_for(n).count();
                let tmax = report
                    .rows_for(n)
                    .map(|r| r.max_tree_size)
                    .max()
                    .unwrap_or(0);
                println!("n={n:<4} median evaluations {median:>12.1}  hit {hits}/{trials}  max leaves {tmax}");
            }
            if let Some(fit) = report.fit {
                println!(
                    "log-log slope {:.3} (r^2 {:.4}, intercept {:.3})",
                    fit.slope, fit.r_squared, fit.intercept
                );
            }
            Ok(true)
        }
        Command::Stagnate(args) => {
            let spec = args.spec(ExperimentKind::Stagnate, &[4, 5, 6, 7, 8]);
            let report = stagnation_experiment(&spec)?;
            print!("{report}");
            Ok(match spec.variant {
                Variant::Single => report.all_exactly_zero(),
                Variant::Multi => true,
            })
        }
        Command::Probe(args) => {
            let spec = args.spec(ExperimentKind::Probe, &[8, 12, 16, 24, 32, 48, 64]);
            let report = success_probability_sweep(&spec)?;
            print!("{report}");
            Ok(true)
        }
        Command::Verify(args) => {
            let n = args.n.unwrap_or(8);
            let report = verify_suite(n)?;
            print!("{report}");
            Ok(report.passed())
        }
        Command::Summary { inputs } => {
            print!("{}", summary_table(&inputs));
            Ok(true)
        }
    }
}
