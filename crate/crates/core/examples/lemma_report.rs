//! Near-optimal trees: optimizing sub-operations and success probabilities.

use gpsort::harness::{success_probability_sweep, ExperimentKind, ExperimentSpec};
use gpsort::oracle::verify_lemma1_cases;

fn main() {
    print!("{}", verify_lemma1_cases(6).unwrap());
    let spec = ExperimentSpec::new(ExperimentKind::Probe, vec![8, 16, 32, 64]);
    print!("{}", success_probability_sweep(&spec).unwrap());
}
