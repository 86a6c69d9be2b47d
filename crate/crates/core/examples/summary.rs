//! Writes a few small campaigns to a temporary directory and renders the
//! measure-by-variant summary grid.

use gpsort::harness::{
    scaling_experiment, stagnation_experiment, summary_table, ExperimentKind, ExperimentSpec,
};
use gpsort::{InitMode, Measure, Variant};

fn main() {
    let dir = std::env::temp_dir().join("gpsort-summary-example");
    std::fs::create_dir_all(&dir).unwrap();
    let mut inputs = Vec::new();

    for variant in [Variant::Single, Variant::Multi] {
        let mut spec = ExperimentSpec::new(ExperimentKind::Scale, vec![4, 6, 8]);
        spec.variant = variant;
        spec.trials = 5;
        spec.output = Some(dir.join(format!("scale-{variant}.csv")));
        scaling_experiment(&spec).unwrap();
        inputs.extend(spec.output);
    }
    for (init, measure) in [
        (InitMode::W1, Measure::Run),
        (InitMode::W1, Measure::Las),
        (InitMode::W2, Measure::Ham),
        (InitMode::W2, Measure::Exc),
    ] {
        for variant in [Variant::Single, Variant::Multi] {
            let mut spec = ExperimentSpec::new(ExperimentKind::Stagnate, vec![6]);
            spec.init = init.clone();
            spec.measure = measure;
            spec.variant = variant;
            spec.trials = 4;
            spec.budget = 20_000;
            spec.output = Some(dir.join(format!("stagnate-{measure}-{variant}.csv")));
            stagnation_experiment(&spec).unwrap();
            inputs.extend(spec.output);
        }
    }
    print!("{}", summary_table(&inputs));
}
