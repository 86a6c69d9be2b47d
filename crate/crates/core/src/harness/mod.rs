//! Seeded experiment campaigns.
//!
//! Every trial's seed is `base_seed ^ splitmix64(trial_index)`. Trials run on
//! a bounded rayon pool and are collected in trial order, so output does not
//! depend on the worker count.

mod fit;
mod probe;
mod records;
mod scale;
mod stagnate;
mod summary;
mod verify;

use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{run, RunConfig, RunError};
use crate::mutation::Variant;
use crate::oracle::OracleError;
use crate::sortedness::Measure;
use crate::tree::{InitConfig, InitMode, TreeError};

pub use fit::{fit_loglog, FitResult};
pub use probe::{success_probability_sweep, ProbeReport, ProbeRow, SweepSeries};
pub use records::{read_exact_rows, read_run_rows, write_csv, write_plot_data, ExactRow, RunRow};
pub use scale::{scaling_experiment, ScalingReport};
pub use stagnate::{stagnation_experiment, StagnationReport};
pub use summary::{summary_table, CellStatus, SummaryTable};
pub use verify::{verify_suite, Check, VerifyReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("fit needs at least 3 positive points with distinct x, got {0}")]
    DegenerateFit(String),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Run,
    Scale,
    Stagnate,
    Probe,
    Verify,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Run => "run",
            ExperimentKind::Scale => "scale",
            ExperimentKind::Stagnate => "stagnate",
            ExperimentKind::Probe => "probe",
            ExperimentKind::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub budget: u64,
    pub base_seed: u64,
    pub measure: Measure,
    pub variant: Variant,
    pub init: InitMode,
    /// CSV destination; plot data files are written next to it.
    pub output: Option<PathBuf>,
    pub workers: usize,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, n_values: Vec<usize>) -> ExperimentSpec {
        ExperimentSpec {
            kind,
            n_values,
            trials: 1,
            budget: 1_000_000,
            base_seed: 0,
            measure: Measure::Inv,
            variant: Variant::Single,
            init: InitMode::PermComb,
            output: None,
            workers: default_workers(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be >= 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(HarnessError::Config("n_values is empty".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarnessError::Config(
                "n_values must be strictly increasing".into(),
            ));
        }
        if self.budget == 0 {
            return Err(HarnessError::Config("budget must be >= 1".into()));
        }
        Ok(())
    }

    /// Identifier shared by all rows of one campaign.
    pub fn experiment_id(&self) -> String {
        format!(
            "{}-{}-{}-{}-{}",
            self.kind.name(),
            self.measure.name(),
            self.variant.name(),
            self.init.name(),
            self.base_seed
        )
    }

    pub fn run_config(&self, n: usize, trial: usize) -> RunConfig {
        RunConfig {
            n,
            measure: self.measure,
            variant: self.variant,
            init: InitConfig::new(n, self.init.clone()),
            budget: self.budget,
            seed: trial_seed(self.base_seed, trial),
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(base_seed: u64, trial: usize) -> u64 {
    base_seed ^ splitmix64(trial as u64)
}

/// Runs every trial for one `n` and returns rows in trial order.
pub fn run_trials(spec: &ExperimentSpec, n: usize) -> Result<Vec<RunRow>, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let id = spec.experiment_id();
    pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|trial| {
                let cfg = spec.run_config(n, trial);
                let record = run(&cfg)?;
                Ok(RunRow::from_record(&id, spec, n, trial, &record))
            })
            .collect()
    })
}

/// Median of a non-empty sample; mean of the middle pair for even sizes.
pub fn median(values: &[u64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_unstable();
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2] as f64
    } else {
        (v[m / 2 - 1] as f64 + v[m / 2] as f64) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        let mut spec = ExperimentSpec::new(ExperimentKind::Scale, vec![4, 8]);
        assert!(spec.validate().is_ok());
        spec.trials = 0;
        assert!(spec.validate().is_err());
        spec.trials = 1;
        spec.n_values = vec![8, 4];
        assert!(spec.validate().is_err());
        spec.n_values = vec![];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn seeds_are_distinct_and_stable() {
        let seeds: Vec<u64> = (0..1000).map(|t| trial_seed(7, t)).collect();
        let mut uniq = seeds.clone();
        uniq.sort_unstable();
        uniq.dedup();
        assert_eq!(uniq.len(), seeds.len());
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3, 1, 2]), 2.0);
        assert_eq!(median(&[4, 1, 2, 3]), 2.5);
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let mut spec = ExperimentSpec::new(ExperimentKind::Scale, vec![6]);
        spec.trials = 12;
        spec.variant = Variant::Multi;
        spec.workers = 1;
        let sequential = run_trials(&spec, 6).unwrap();
        spec.workers = 4;
        let parallel = run_trials(&spec, 6).unwrap();
        assert_eq!(sequential, parallel);
    }
}
