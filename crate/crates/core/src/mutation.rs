//! HVL-mutate' restricted to binary joins.
//!
//! Each application picks one of substitute, insert, delete with
//! probability 1/3. Random draws happen in a fixed order: kind, then target,
//! then label, then child order. A delete on a single-leaf tree draws no
//! target and leaves the tree unchanged.

use std::fmt;

use rand::Rng;

use crate::tree::{Label, Side, Tree, TreeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MutationKind {
    Substitute,
    Insert,
    Delete,
}

impl MutationKind {
    pub const ALL: [MutationKind; 3] = [
        MutationKind::Substitute,
        MutationKind::Insert,
        MutationKind::Delete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MutationKind::Substitute => "substitute",
            MutationKind::Insert => "insert",
            MutationKind::Delete => "delete",
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One fully specified sub-operation. `target` is an in-order node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationInstance {
    Substitute {
        target: usize,
        label: Label,
    },
    Insert {
        target: usize,
        label: Label,
        side: Side,
    },
    Delete {
        target: usize,
    },
}

impl MutationInstance {
    pub fn kind(&self) -> MutationKind {
        match self {
            MutationInstance::Substitute { .. } => MutationKind::Substitute,
            MutationInstance::Insert { .. } => MutationKind::Insert,
            MutationInstance::Delete { .. } => MutationKind::Delete,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            MutationInstance::Substitute { target, .. }
            | MutationInstance::Insert { target, .. }
            | MutationInstance::Delete { target } => target,
        }
    }

    pub fn apply(&self, tree: &Tree) -> Result<Tree, TreeError> {
        match *self {
            MutationInstance::Substitute { target, label } => tree.with_substitution(target, label),
            MutationInstance::Insert {
                target,
                label,
                side,
            } => tree.with_insertion(target, label, side),
            MutationInstance::Delete { target } => tree.with_deletion(target),
        }
    }
}

impl fmt::Display for MutationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MutationInstance::Substitute { target, label } => {
                write!(f, "substitute node {target} -> {label}")
            }
            MutationInstance::Insert {
                target,
                label,
                side,
            } => {
                write!(f, "insert {label} {side:?} of node {target}")
            }
            MutationInstance::Delete { target } => write!(f, "delete node {target}"),
        }
    }
}

pub fn sample_kind<R: Rng + ?Sized>(rng: &mut R) -> MutationKind {
    MutationKind::ALL[rng.gen_range(0..3)]
}

/// Draws the remaining parameters of a sub-operation of the given kind.
pub fn sample_instance_of<R: Rng + ?Sized>(
    kind: MutationKind,
    tree: &Tree,
    n: usize,
    rng: &mut R,
) -> MutationInstance {
    match kind {
        MutationKind::Substitute => {
            let target = Tree::leaf_index(rng.gen_range(0..tree.leaf_count()));
            let label = rng.gen_range(1..=n);
            MutationInstance::Substitute { target, label }
        }
        MutationKind::Insert => {
            let target = rng.gen_range(0..tree.node_count());
            let label = rng.gen_range(1..=n);
            let side = if rng.gen_bool(0.5) {
                Side::Left
            } else {
                Side::Right
            };
            MutationInstance::Insert {
                target,
                label,
                side,
            }
        }
        MutationKind::Delete => {
            let target = if tree.leaf_count() > 1 {
                Tree::leaf_index(rng.gen_range(0..tree.leaf_count()))
            } else {
                0
            };
            MutationInstance::Delete { target }
        }
    }
}

pub fn sample_instance<R: Rng + ?Sized>(tree: &Tree, n: usize, rng: &mut R) -> MutationInstance {
    let kind = sample_kind(rng);
    sample_instance_of(kind, tree, n, rng)
}

fn apply_sampled(tree: &Tree, instance: MutationInstance) -> Tree {
    instance
        .apply(tree)
        .expect("sampled instance is valid for the tree it was drawn from")
}

/// Relabel a uniformly chosen leaf with a uniformly drawn label.
pub fn substitute<R: Rng + ?Sized>(tree: &Tree, n: usize, rng: &mut R) -> Tree {
    apply_sampled(
        tree,
        sample_instance_of(MutationKind::Substitute, tree, n, rng),
    )
}

/// Replace a uniformly chosen node `v` by `J(u, v)` or `J(v, u)`.
pub fn insert<R: Rng + ?Sized>(tree: &Tree, n: usize, rng: &mut R) -> Tree {
    apply_sampled(tree, sample_instance_of(MutationKind::Insert, tree, n, rng))
}

/// Remove a uniformly chosen leaf and its parent, promoting the sibling.
pub fn delete<R: Rng + ?Sized>(tree: &Tree, n: usize, rng: &mut R) -> Tree {
    apply_sampled(tree, sample_instance_of(MutationKind::Delete, tree, n, rng))
}

/// Applies `k` sequential sub-operations, each of a uniformly drawn kind.
pub fn hvl_mutate<R: Rng + ?Sized>(tree: &Tree, k: usize, n: usize, rng: &mut R) -> Tree {
    let mut out = tree.clone();
    for _ in 0..k {
        let instance = sample_instance(&out, n, rng);
        out = apply_sampled(&out, instance);
    }
    out
}

/// Single applies one sub-operation per offspring, multi `1 + Poisson(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Single,
    Multi,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Single => "single",
            Variant::Multi => "multi",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Variant, String> {
        match s.to_ascii_lowercase().as_str() {
            "single" => Ok(Variant::Single),
            "multi" => Ok(Variant::Multi),
            _ => Err(format!("unknown variant '{s}'")),
        }
    }
}

/// Number of sub-operations for the next offspring.
pub fn sample_k<R: Rng + ?Sized>(variant: Variant, rng: &mut R) -> usize {
    match variant {
        Variant::Single => 1,
        Variant::Multi => 1 + poisson_one(rng),
    }
}

/// Poisson(1) by multiplying uniforms until the product drops to `e^-1`.
pub fn poisson_one<R: Rng + ?Sized>(rng: &mut R) -> usize {
    let threshold = (-1.0f64).exp();
    let mut product: f64 = rng.gen();
    let mut k = 0;
    while product > threshold {
        k += 1;
        product *= rng.gen::<f64>();
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn substitute_single_leaf() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let out = substitute(&t("2"), 3, &mut rng);
            assert_eq!(out.leaf_count(), 1);
        }
        let inst = MutationInstance::Substitute {
            target: 0,
            label: 1,
        };
        assert_eq!(inst.apply(&t("2")).unwrap(), t("1"));
    }

    #[test]
    fn insert_on_single_leaf() {
        let inst = MutationInstance::Insert {
            target: 0,
            label: 5,
            side: Side::Left,
        };
        assert_eq!(inst.apply(&t("3")).unwrap(), t("J(5,3)"));
        let inst = MutationInstance::Insert {
            target: 0,
            label: 5,
            side: Side::Right,
        };
        assert_eq!(inst.apply(&t("3")).unwrap(), t("J(3,5)"));
    }

    #[test]
    fn delete_cases() {
        let del = |tree: &str, target| MutationInstance::Delete { target }.apply(&t(tree)).unwrap();
        assert_eq!(del("J(1,2)", 2), t("1"));
        assert_eq!(del("7", 0), t("7"));
        assert_eq!(del("J(J(1,2),3)", 0), t("J(2,3)"));
    }

    #[test]
    fn double_delete_on_pair() {
        let tree = t("J(1,2)");
        let once = MutationInstance::Delete { target: 0 }.apply(&tree).unwrap();
        let twice = MutationInstance::Delete { target: 0 }.apply(&once).unwrap();
        assert_eq!(twice.leaf_count(), 1);
        assert_eq!(twice, t("2"));
    }

    #[test]
    fn size_deltas() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tree = Tree::comb(&[3, 1, 2, 2, 4], 4).unwrap();
        for _ in 0..500 {
            assert_eq!(substitute(&tree, 4, &mut rng).leaf_count(), 5);
            assert_eq!(
                insert(&tree, 4, &mut rng).node_count(),
                tree.node_count() + 2
            );
            assert_eq!(delete(&tree, 4, &mut rng).leaf_count(), 4);
        }
        assert_eq!(delete(&t("3"), 4, &mut rng), t("3"));
    }

    #[test]
    fn single_variant_always_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!((0..1000).all(|_| sample_k(Variant::Single, &mut rng) == 1));
        assert!((0..1000).all(|_| sample_k(Variant::Multi, &mut rng) >= 1));
    }

    #[test]
    fn multi_k_equal_one_has_probability_inverse_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let draws = 1_000_000;
        let ones = (0..draws)
            .filter(|_| sample_k(Variant::Multi, &mut rng) == 1)
            .count();
        let freq = ones as f64 / draws as f64;
        assert!((freq - (-1.0f64).exp()).abs() < 0.002, "P(k=1) = {freq}");
    }

    #[test]
    fn kind_frequencies_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut counts = [0usize; 3];
        let draws = 100_000;
        for _ in 0..draws {
            counts[sample_kind(&mut rng) as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / draws as f64 - 1.0 / 3.0).abs() < 0.01);
        }
    }

    #[test]
    fn hvl_mutate_k_one_applies_exactly_one_step() {
        // with a fixed seed the one-step result equals the first sampled instance
        let tree = Tree::comb(&[2, 1, 3], 3).unwrap();
        for seed in 0..50 {
            let mut a = ChaCha8Rng::seed_from_u64(seed);
            let mut b = ChaCha8Rng::seed_from_u64(seed);
            let out = hvl_mutate(&tree, 1, 3, &mut a);
            let inst = sample_instance(&tree, 3, &mut b);
            assert_eq!(out, inst.apply(&tree).unwrap());
        }
    }
}
