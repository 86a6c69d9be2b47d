//! Expresses a leaf list and scores it under every measure.

use gpsort::{evaluate, ExpressedPermutation, Measure, Tree};

fn main() {
    let labels = [2, 2, 3, 4, 5, 1, 6, 3];
    let n = 6;
    let tree = Tree::comb(&labels, n).expect("labels are in 1..=6");
    println!("tree      {tree}");
    println!("expressed {}", ExpressedPermutation::of_tree(&tree, n));
    for m in Measure::ALL {
        let f = evaluate(&tree, m, n);
        println!(
            "{m:<4} {:>3}  (optimum {}, {:?})",
            f.value,
            m.optimum(n),
            m.direction()
        );
    }
}
