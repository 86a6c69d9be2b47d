use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::records::{plot_path, write_csv, write_plot_data};
use super::{fit_loglog, ExperimentSpec, FitResult, HarnessError};
use crate::mutation::MutationKind;
use crate::oracle::{case1_missing, case2_misplaced, for_each_single_mutation, prob_to_f64, Prob};
use crate::sortedness::is_optimal;
use crate::tree::Tree;

/// Largest `n` the sweep accepts.
pub const SWEEP_MAX_N: usize = 64;

/// Near-optimal tree families, one tree per `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepSeries {
    /// Misplaced `n` in front of `i = n/2`; fixed by deletion or substitution.
    DeletionAssisted,
    /// Missing `i = n/2`; fixed only by insertion or substitution.
    InsertSubstitute,
    /// Missing `1`; insertion at the front of a comb has one instance per
    /// spine node.
    LeadingGap,
    /// The deletion-assisted tree with deletions left out.
    MisplacedWithoutDeletion,
}

impl SweepSeries {
    pub const ALL: [SweepSeries; 4] = [
        SweepSeries::DeletionAssisted,
        SweepSeries::InsertSubstitute,
        SweepSeries::LeadingGap,
        SweepSeries::MisplacedWithoutDeletion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepSeries::DeletionAssisted => "deletion-assisted",
            SweepSeries::InsertSubstitute => "insert-substitute",
            SweepSeries::LeadingGap => "leading-gap",
            SweepSeries::MisplacedWithoutDeletion => "misplaced-no-delete",
        }
    }

    pub fn leaves(self, n: usize) -> Vec<usize> {
        match self {
            SweepSeries::DeletionAssisted | SweepSeries::MisplacedWithoutDeletion => {
                case2_misplaced(n, n / 2, n)
            }
            SweepSeries::InsertSubstitute => case1_missing(n, n / 2),
            SweepSeries::LeadingGap => case1_missing(n, 1),
        }
    }

    fn counts(self, kind: MutationKind) -> bool {
        !(self == SweepSeries::MisplacedWithoutDeletion && kind == MutationKind::Delete)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub series: String,
    pub n: usize,
    pub numerator: String,
    pub denominator: String,
    pub probability: f64,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub exact: Vec<(SweepSeries, usize, Prob)>,
    pub fits: Vec<(SweepSeries, Option<FitResult>)>,
}

impl ProbeReport {
    pub fn fit(&self, series: SweepSeries) -> Option<FitResult> {
        self.fits
            .iter()
            .find(|(s, _)| *s == series)
            .and_then(|(_, f)| *f)
    }

    pub fn max_probability(&self) -> Prob {
        self.exact
            .iter()
            .map(|(_, _, p)| *p)
            .max()
            .unwrap_or_else(Prob::zero)
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for series in SweepSeries::ALL {
            write!(f, "{:<20}", series.name())?;
            match self.fit(series) {
                Some(fit) => writeln!(f, " slope {:+.3}  r^2 {:.4}", fit.slope, fit.r_squared)?,
                None => writeln!(f, " (fewer than 3 points)")?,
            }
            for (s, n, p) in &self.exact {
                if *s == series {
                    writeln!(f, "    n={n:<3} p={p} ({:.3e})", prob_to_f64(p))?;
                }
            }
        }
        Ok(())
    }
}

fn series_probability(series: SweepSeries, n: usize) -> Result<Prob, HarnessError> {
    let tree = Tree::comb(&series.leaves(n), n)?;
    let mut total = Prob::zero();
    for_each_single_mutation(&tree, n, |instance, result, p| {
        if series.counts(instance.kind()) && is_optimal(&result, n) {
            total += p;
        }
    })?;
    Ok(total)
}

/// Exact one-step success probability for each near-optimal family and
/// `n` in `spec.n_values`, with a log-log slope per family.
pub fn success_probability_sweep(spec: &ExperimentSpec) -> Result<ProbeReport, HarnessError> {
    spec.validate()?;
    if let Some(&n) = spec
        .n_values
        .iter()
        .find(|&&n| !(4..=SWEEP_MAX_N).contains(&n))
    {
        return Err(HarnessError::Config(format!(
            "probe needs 4 <= n <= {SWEEP_MAX_N}, got {n}"
        )));
    }
    let mut rows = Vec::new();
    let mut exact = Vec::new();
    let mut fits = Vec::new();
    for series in SweepSeries::ALL {
        let mut points = Vec::new();
        for &n in &spec.n_values {
            let p = series_probability(series, n)?;
            let pf = prob_to_f64(&p);
            rows.push(ProbeRow {
                series: series.name().to_string(),
                n,
                numerator: p.numer().to_string(),
                denominator: p.denom().to_string(),
                probability: pf,
            });
            exact.push((series, n, p));
            points.push((n as f64, pf));
        }
        let fit = if points.len() >= 3 {
            Some(fit_loglog(&points)?)
        } else {
            None
        };
        if let Some(path) = &spec.output {
            write_plot_data(
                &plot_path(path, series.name()),
                ("n", "probability"),
                &points,
            )?;
        }
        fits.push((series, fit));
    }
    if let Some(path) = &spec.output {
        write_csv(path, &rows)?;
    }
    Ok(ProbeReport { rows, exact, fits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ExperimentKind;

    #[test]
    fn deletion_assisted_is_one_over_three_n_at_leading_position() {
        // sanity on a closed form: (n,1,1,2..n) gives 1/(3Ln) + 1/(3L) with L = n + 2
        let n = 10u128;
        let tree = Tree::comb(&case2_misplaced(10, 1, 10), 10).unwrap();
        let l = tree.leaf_count() as u128;
        let mut total = Prob::zero();
        for_each_single_mutation(&tree, 10, |_, r, p| {
            if is_optimal(&r, 10) {
                total += p;
            }
        })
        .unwrap();
        assert_eq!(total, Prob::new(1, 3 * l * n) + Prob::new(1, 3 * l));
    }

    #[test]
    fn rejects_out_of_range_sizes() {
        let spec = ExperimentSpec::new(ExperimentKind::Probe, vec![3, 8]);
        assert!(success_probability_sweep(&spec).is_err());
        let spec = ExperimentSpec::new(ExperimentKind::Probe, vec![8, 65]);
        assert!(success_probability_sweep(&spec).is_err());
    }

    #[test]
    fn probabilities_bounded_by_kind_mass() {
        let spec = ExperimentSpec::new(ExperimentKind::Probe, vec![4, 6, 8, 12]);
        let report = success_probability_sweep(&spec).unwrap();
        assert!(report.max_probability() <= Prob::new(1, 3));
        assert!(report.exact.iter().all(|(_, _, p)| !p.is_zero()));
    }
}
