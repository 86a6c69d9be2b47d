//! Exact single-step neighborhood of a small tree, with improving moves.

use gpsort::oracle::{
    enumerate_single_mutations, exact_improvement_probability, neighborhood_size,
};
use gpsort::sortedness::better;
use gpsort::{evaluate, Measure, Tree};

fn main() {
    let n = 4;
    let tree: Tree = "J(J(2,1),J(3,4))".parse().unwrap();
    let measure = Measure::Inv;
    let parent = evaluate(&tree, measure, n);
    println!(
        "{tree}: {measure}={} neighborhood size {}",
        parent.value,
        neighborhood_size(&tree, n)
    );
    for entry in enumerate_single_mutations(&tree, n).unwrap() {
        let child = evaluate(&entry.result, measure, n);
        if better(measure, child, parent).unwrap() {
            println!(
                "  p={:<8} {:<28} -> {} ({})",
                entry.probability, entry.instance, entry.result, child.value
            );
        }
    }
    println!(
        "improvement probability {}",
        exact_improvement_probability(&tree, n, measure).unwrap()
    );
}
