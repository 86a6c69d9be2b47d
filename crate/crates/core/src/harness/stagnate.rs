use std::fmt;

use num_traits::Zero;

use super::records::write_csv;
use super::{run_trials, ExactRow, ExperimentSpec, HarnessError, RunRow};
use crate::mutation::Variant;
use crate::oracle::{exact_improvement_probability, Prob};
use crate::sortedness::{evaluate, Measure};
use crate::tree::{InitMode, Tree};

#[derive(Debug, Clone)]
pub struct StagnationReport {
    pub measure: Measure,
    pub variant: Variant,
    pub init: InitMode,
    /// Single variant: exact improvement probability of the start tree per `n`.
    pub exact: Vec<(usize, Prob)>,
    pub exact_rows: Vec<ExactRow>,
    /// Multi variant: one row per trial.
    pub rows: Vec<RunRow>,
    /// Fitness of the start tree per `n`.
    pub initial_fitness: Vec<(usize, u64)>,
}

impl StagnationReport {
    /// True iff every exact probability is zero.
    pub fn all_exactly_zero(&self) -> bool {
        self.exact.iter().all(|(_, p)| p.is_zero())
    }

    /// Trials, per `n`, whose run accepted no offspring at all.
    pub fn stuck_runs(&self, n: usize) -> (usize, usize) {
        let batch: Vec<&RunRow> = self.rows.iter().filter(|r| r.n == n).collect();
        (
            batch.iter().filter(|r| r.improvements == 0).count(),
            batch.len(),
        )
    }
}

impl fmt::Display for StagnationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "stagnation from {} under {} ({})",
            self.init.name(),
            self.measure,
            self.variant
        )?;
        for (n, fit) in &self.initial_fitness {
            write!(f, "  n={n:<3} initial {}={fit}", self.measure)?;
            if let Some((_, p)) = self.exact.iter().find(|(m, _)| m == n) {
                write!(f, "  exact single-step improvement probability = {p}")?;
            }
            let (stuck, total) = self.stuck_runs(*n);
            if total > 0 {
                write!(f, "  runs without improvement: {stuck}/{total}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The measures each worst-case start tree is built to block.
pub fn matching_measures(init: &InitMode) -> &'static [Measure] {
    match init {
        InitMode::W1 => &[Measure::Run, Measure::Las],
        InitMode::W2 => &[Measure::Ham, Measure::Exc],
        _ => &[],
    }
}

/// Single variant: exact single-step improvement probability from the
/// worst-case tree, by enumeration. Multi variant: budgeted seeded runs,
/// counting accepted improvements.
pub fn stagnation_experiment(spec: &ExperimentSpec) -> Result<StagnationReport, HarnessError> {
    spec.validate()?;
    if !matching_measures(&spec.init).contains(&spec.measure) {
        return Err(HarnessError::Config(format!(
            "init {} does not pair with measure {} (w1: RUN/LAS, w2: HAM/EXC)",
            spec.init.name(),
            spec.measure
        )));
    }
    if let Some(&n) = spec.n_values.iter().find(|&&n| n < 3) {
        return Err(HarnessError::Config(format!(
            "worst-case trees need n >= 3, got {n}"
        )));
    }
    let id = spec.experiment_id();
    let mut report = StagnationReport {
        measure: spec.measure,
        variant: spec.variant,
        init: spec.init.clone(),
        exact: Vec::new(),
        exact_rows: Vec::new(),
        rows: Vec::new(),
        initial_fitness: Vec::new(),
    };
    for &n in &spec.n_values {
        let tree = match spec.init {
            InitMode::W1 => Tree::worst_case_w1(n)?,
            _ => Tree::worst_case_w2(n)?,
        };
        let start = evaluate(&tree, spec.measure, n).value;
        report.initial_fitness.push((n, start));
        match spec.variant {
            Variant::Single => {
                let p = exact_improvement_probability(&tree, n, spec.measure)?;
                report.exact_rows.push(ExactRow {
                    experiment_id: id.clone(),
                    kind: spec.kind.name().to_string(),
                    measure: spec.measure.name().to_string(),
                    variant: spec.variant.name().to_string(),
                    init: spec.init.name().to_string(),
                    n,
                    initial_fitness: start,
                    improvement_probability: p.to_string(),
                });
                report.exact.push((n, p));
            }
            Variant::Multi => report.rows.extend(run_trials(spec, n)?),
        }
    }
    if let Some(path) = &spec.output {
        match spec.variant {
            Variant::Single => write_csv(path, &report.exact_rows)?,
            Variant::Multi => write_csv(path, &report.rows)?,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ExperimentKind;

    fn spec(init: InitMode, measure: Measure, variant: Variant, ns: Vec<usize>) -> ExperimentSpec {
        let mut s = ExperimentSpec::new(ExperimentKind::Stagnate, ns);
        s.init = init;
        s.measure = measure;
        s.variant = variant;
        s
    }

    #[test]
    fn rejects_mismatched_pairing() {
        let s = spec(InitMode::W1, Measure::Ham, Variant::Single, vec![4]);
        assert!(matches!(
            stagnation_experiment(&s),
            Err(HarnessError::Config(_))
        ));
        let s = spec(InitMode::PermComb, Measure::Run, Variant::Single, vec![4]);
        assert!(stagnation_experiment(&s).is_err());
    }

    #[test]
    fn single_variant_is_exactly_stuck() {
        let s = spec(
            InitMode::W1,
            Measure::Run,
            Variant::Single,
            (4..=8).collect(),
        );
        let report = stagnation_experiment(&s).unwrap();
        assert!(report.all_exactly_zero());
        assert_eq!(report.exact_rows[0].improvement_probability, "0");
    }

    #[test]
    fn initial_fitness_of_w1_under_run() {
        let s = spec(InitMode::W1, Measure::Run, Variant::Single, vec![6]);
        let report = stagnation_experiment(&s).unwrap();
        assert_eq!(report.initial_fitness, vec![(6, 2)]);
    }

    #[test]
    fn multi_variant_runs_trials() {
        let mut s = spec(InitMode::W2, Measure::Exc, Variant::Multi, vec![6]);
        s.trials = 3;
        s.budget = 5_000;
        let report = stagnation_experiment(&s).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.stuck_runs(6), (3, 3));
    }
}
