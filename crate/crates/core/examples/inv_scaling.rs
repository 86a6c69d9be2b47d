//! Median evaluations to the optimum on INV and the log-log slope.

use gpsort::harness::{scaling_experiment, ExperimentKind, ExperimentSpec};
use gpsort::{Measure, Variant};

fn main() {
    for variant in [Variant::Single, Variant::Multi] {
        let mut spec = ExperimentSpec::new(ExperimentKind::Scale, vec![4, 8, 16]);
        spec.measure = Measure::Inv;
        spec.variant = variant;
        spec.trials = 20;
        spec.budget = 10_000_000;
        let report = scaling_experiment(&spec).unwrap();
        println!("{variant}: medians {:?}", report.medians);
        if let Some(fit) = report.fit {
            println!("  slope {:.3} r^2 {:.4}", fit.slope, fit.r_squared);
        }
    }
}
