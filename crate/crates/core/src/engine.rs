//! The (1+1) GP* loop: one parent, one offspring per iteration, strict
//! acceptance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::mutation::{hvl_mutate, sample_k, Variant};
use crate::sortedness::{better, evaluate, is_optimal, Fitness, Measure};
use crate::tree::{random_init, InitConfig, Tree, TreeError};

/// Random stream used by every run. Seeded from a single `u64`.
pub type RunRng = ChaCha8Rng;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Init(#[from] TreeError),
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("init config is for n={init} but run is for n={run}")]
    SizeMismatch { init: usize, run: usize },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub measure: Measure,
    pub variant: Variant,
    pub init: InitConfig,
    /// Maximum number of fitness evaluations, the initial one included.
    pub budget: u64,
    pub seed: u64,
}

/// An accepted offspring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Improvement {
    /// 1-based index of the evaluation that produced the offspring.
    pub evaluation: u64,
    pub fitness: u64,
    pub leaf_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub evaluations_used: u64,
    pub hit_optimum: bool,
    pub initial_fitness: Fitness,
    pub final_fitness: Fitness,
    pub improvements: Vec<Improvement>,
    /// Largest leaf count of the current solution over the run.
    pub max_tree_size_observed: usize,
    pub seed: u64,
    pub final_tree: Tree,
}

impl RunRecord {
    /// Accepted fitness values, initial value first.
    pub fn fitness_trace(&self) -> Vec<u64> {
        std::iter::once(self.initial_fitness.value)
            .chain(self.improvements.iter().map(|i| i.fitness))
            .collect()
    }
}

/// Runs from a tree drawn by `cfg.init` until the optimum is reached or the
/// budget is spent.
pub fn run(cfg: &RunConfig) -> Result<RunRecord, RunError> {
    if cfg.init.n != cfg.n {
        return Err(RunError::SizeMismatch {
            init: cfg.init.n,
            run: cfg.n,
        });
    }
    let mut rng = RunRng::seed_from_u64(cfg.seed);
    let start = random_init(&cfg.init, &mut rng)?;
    run_from(start, cfg, &mut rng)
}

/// Same loop, starting from a given tree and continuing on `rng`.
pub fn run_from(start: Tree, cfg: &RunConfig, rng: &mut RunRng) -> Result<RunRecord, RunError> {
    if cfg.budget == 0 {
        return Err(RunError::ZeroBudget);
    }
    let (n, measure) = (cfg.n, cfg.measure);
    let mut current = start;
    let mut fitness = evaluate(&current, measure, n);
    let initial_fitness = fitness;
    let mut evaluations = 1u64;
    let mut improvements = Vec::new();
    let mut max_size = current.leaf_count();
    let mut optimal = is_optimal(&current, n);

    while !optimal && evaluations < cfg.budget {
        let k = sample_k(cfg.variant, rng);
        let offspring = hvl_mutate(&current, k, n, rng);
        let child_fitness = evaluate(&offspring, measure, n);
        evaluations += 1;
        if better(measure, child_fitness, fitness).expect("same measure") {
            current = offspring;
            fitness = child_fitness;
            max_size = max_size.max(current.leaf_count());
            improvements.push(Improvement {
                evaluation: evaluations,
                fitness: fitness.value,
                leaf_count: current.leaf_count(),
            });
            optimal = is_optimal(&current, n);
        }
    }

    Ok(RunRecord {
        evaluations_used: evaluations,
        hit_optimum: optimal,
        initial_fitness,
        final_fitness: fitness,
        improvements,
        max_tree_size_observed: max_size,
        seed: cfg.seed,
        final_tree: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sortedness::Direction;
    use crate::tree::InitMode;

    fn cfg(
        n: usize,
        measure: Measure,
        variant: Variant,
        mode: InitMode,
        budget: u64,
        seed: u64,
    ) -> RunConfig {
        RunConfig {
            n,
            measure,
            variant,
            init: InitConfig::new(n, mode),
            budget,
            seed,
        }
    }

    #[test]
    fn optimal_start_uses_one_evaluation() {
        let c = cfg(
            5,
            Measure::Inv,
            Variant::Single,
            InitMode::Explicit(vec![1, 2, 3, 4, 5]),
            100,
            1,
        );
        let rec = run(&c).unwrap();
        assert_eq!(rec.evaluations_used, 1);
        assert!(rec.hit_optimum);
        assert!(rec.improvements.is_empty());
    }

    #[test]
    fn zero_budget_rejected() {
        let c = cfg(5, Measure::Inv, Variant::Single, InitMode::PermComb, 0, 1);
        assert!(matches!(run(&c), Err(RunError::ZeroBudget)));
    }

    #[test]
    fn budget_respected() {
        let c = cfg(6, Measure::Run, Variant::Single, InitMode::W1, 500, 3);
        let rec = run(&c).unwrap();
        assert_eq!(rec.evaluations_used, 500);
        assert!(!rec.hit_optimum);
        assert!(rec.improvements.is_empty());
        assert_eq!(rec.final_fitness.value, 2);
    }

    #[test]
    fn improvements_are_strictly_monotone() {
        for measure in Measure::ALL {
            for seed in 0..5 {
                let c = cfg(6, measure, Variant::Multi, InitMode::PermComb, 20_000, seed);
                let rec = run(&c).unwrap();
                let trace = rec.fitness_trace();
                for w in trace.windows(2) {
                    match measure.direction() {
                        Direction::Maximize => assert!(w[1] > w[0]),
                        Direction::Minimize => assert!(w[1] < w[0]),
                    }
                }
            }
        }
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let c = cfg(
            7,
            Measure::Inv,
            Variant::Multi,
            InitMode::PermComb,
            100_000,
            42,
        );
        assert_eq!(run(&c).unwrap(), run(&c).unwrap());
    }

    #[test]
    fn inv_single_solves_small_instances() {
        for seed in 0..50 {
            let c = cfg(
                8,
                Measure::Inv,
                Variant::Single,
                InitMode::PermComb,
                1_000_000,
                seed,
            );
            let rec = run(&c).unwrap();
            assert!(rec.hit_optimum, "seed {seed}");
            assert_eq!(rec.final_fitness.value, 28);
        }
    }
}
