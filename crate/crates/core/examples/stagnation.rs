//! Worst-case start trees: exact zero improvement probability and a short
//! multi-step campaign that stays stuck.

use gpsort::harness::{stagnation_experiment, ExperimentKind, ExperimentSpec};
use gpsort::{InitMode, Measure, Variant};

fn main() {
    for (init, measure) in [(InitMode::W1, Measure::Run), (InitMode::W2, Measure::Exc)] {
        let mut spec = ExperimentSpec::new(ExperimentKind::Stagnate, vec![4, 6, 8]);
        spec.init = init;
        spec.measure = measure;
        print!("{}", stagnation_experiment(&spec).unwrap());
    }
    let mut spec = ExperimentSpec::new(ExperimentKind::Stagnate, vec![8]);
    spec.variant = Variant::Multi;
    spec.init = InitMode::W2;
    spec.measure = Measure::Ham;
    spec.trials = 4;
    spec.budget = 50_000;
    print!("{}", stagnation_experiment(&spec).unwrap());
}
