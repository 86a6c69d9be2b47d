use super::records::{plot_path, write_csv, write_plot_data};
use super::{fit_loglog, median, run_trials, ExperimentSpec, FitResult, HarnessError, RunRow};

#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub rows: Vec<RunRow>,
    /// `(n, median evaluations)` per tested `n`.
    pub medians: Vec<(usize, f64)>,
    /// Slope of `ln median` against `ln n`; `None` with fewer than 3 sizes.
    pub fit: Option<FitResult>,
}

impl ScalingReport {
    pub fn all_hit_optimum(&self) -> bool {
        self.rows.iter().all(|r| r.hit_optimum)
    }

    pub fn rows_for(&self, n: usize) -> impl Iterator<Item = &RunRow> {
        self.rows.iter().filter(move |r| r.n == n)
    }
}

/// Runs `spec.trials` seeded runs for each `n` and fits the growth of the
/// median number of evaluations. Budget-capped runs enter the median with
/// their capped count.
pub fn scaling_experiment(spec: &ExperimentSpec) -> Result<ScalingReport, HarnessError> {
    spec.validate()?;
    let mut rows = Vec::new();
    let mut medians = Vec::new();
    for &n in &spec.n_values {
        let batch = run_trials(spec, n)?;
        let evals: Vec<u64> = batch.iter().map(|r| r.evaluations).collect();
        medians.push((n, median(&evals)));
        rows.extend(batch);
    }
    let points: Vec<(f64, f64)> = medians.iter().map(|&(n, m)| (n as f64, m)).collect();
    let fit = if points.len() >= 3 {
        Some(fit_loglog(&points)?)
    } else {
        None
    };
    if let Some(path) = &spec.output {
        write_csv(path, &rows)?;
        write_plot_data(
            &plot_path(path, "median"),
            ("n", "median_evaluations"),
            &points,
        )?;
    }
    Ok(ScalingReport { rows, medians, fit })
}
