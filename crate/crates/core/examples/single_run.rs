//! One seeded run of each variant on INV from a random permutation comb.

use gpsort::{run, InitConfig, InitMode, Measure, RunConfig, Variant};

fn main() {
    let n = 12;
    for variant in [Variant::Single, Variant::Multi] {
        let cfg = RunConfig {
            n,
            measure: Measure::Inv,
            variant,
            init: InitConfig::new(n, InitMode::PermComb),
            budget: 1_000_000,
            seed: 42,
        };
        let record = run(&cfg).expect("valid config");
        println!(
            "{variant}: {} evaluations, optimum {}, {} improvements, largest tree {} leaves",
            record.evaluations_used,
            record.hit_optimum,
            record.improvements.len(),
            record.max_tree_size_observed
        );
        println!("  fitness trace {:?}", record.fitness_trace());
        println!("  final tree    {}", record.final_tree);
    }
}
