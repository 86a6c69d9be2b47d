//! Exhaustive ground truth.
//!
//! Every single sub-operation that can be applied to a tree is enumerated
//! with its exact probability as a rational number. Success and improvement
//! probabilities are sums over that enumeration, so a zero here is exact.
//! The module also carries definition-literal reference implementations of
//! the sortedness measures and a breadth-first transposition distance.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::mutation::{MutationInstance, MutationKind};
use crate::sortedness::{better, evaluate, is_optimal, Measure};
use crate::tree::{Label, Side, Tree, TreeError};

/// Exact probability.
pub type Prob = Ratio<u128>;

/// Largest neighborhood the enumerator will walk.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;
/// Largest permutation size for breadth-first EXC.
pub const BFS_EXC_MAX_N: usize = 6;
/// Largest sequence for exhaustive LAS.
pub const EXHAUSTIVE_LAS_MAX: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("neighborhood has {0} entries, above the enumeration limit")]
    TooLarge(u64),
    #[error("input tree is already optimal")]
    AlreadyOptimal,
    #[error("permutation is incomplete")]
    Incomplete,
    #[error("sequence length {len} above limit {limit}")]
    SizeGuard { len: usize, limit: usize },
    #[error("lemma cases need 3 <= n <= 16, got {0}")]
    LemmaRange(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborEntry {
    pub instance: MutationInstance,
    pub result: Tree,
    pub probability: Prob,
}

/// Number of entries `enumerate_single_mutations` would produce.
pub fn neighborhood_size(tree: &Tree, n: usize) -> u64 {
    let (leaves, nodes) = (tree.leaf_count() as u64, tree.node_count() as u64);
    leaves * n as u64 + nodes * n as u64 * 2 + leaves
}

/// Calls `visit` for every single sub-operation with its exact probability.
pub fn for_each_single_mutation<F>(tree: &Tree, n: usize, mut visit: F) -> Result<(), OracleError>
where
    F: FnMut(MutationInstance, Tree, Prob),
{
    let size = neighborhood_size(tree, n);
    if size > ENUMERATION_LIMIT {
        return Err(OracleError::TooLarge(size));
    }
    let leaves = tree.leaf_count() as u128;
    let nodes = tree.node_count() as u128;
    let n128 = n as u128;

    let p_sub = Prob::new(1, 3 * leaves * n128);
    for k in 0..tree.leaf_count() {
        for label in 1..=n {
            let instance = MutationInstance::Substitute {
                target: Tree::leaf_index(k),
                label,
            };
            visit(instance, instance.apply(tree)?, p_sub);
        }
    }

    let p_ins = Prob::new(1, 3 * nodes * n128 * 2);
    for target in 0..tree.node_count() {
        for label in 1..=n {
            for side in [Side::Left, Side::Right] {
                let instance = MutationInstance::Insert {
                    target,
                    label,
                    side,
                };
                visit(instance, instance.apply(tree)?, p_ins);
            }
        }
    }

    // a single leaf has no parent: one no-op entry carries the whole kind mass
    let p_del = Prob::new(1, 3 * leaves);
    for k in 0..tree.leaf_count() {
        let instance = MutationInstance::Delete {
            target: Tree::leaf_index(k),
        };
        visit(instance, instance.apply(tree)?, p_del);
    }
    Ok(())
}

/// All single sub-operations of `tree` with exact probabilities.
pub fn enumerate_single_mutations(
    tree: &Tree,
    n: usize,
) -> Result<Vec<NeighborEntry>, OracleError> {
    let mut out = Vec::with_capacity(neighborhood_size(tree, n).min(ENUMERATION_LIMIT) as usize);
    for_each_single_mutation(tree, n, |instance, result, probability| {
        out.push(NeighborEntry {
            instance,
            result,
            probability,
        })
    })?;
    Ok(out)
}

/// Probability that one sub-operation turns `tree` into an optimum.
///
/// Optimality does not depend on the measure; `measure` is kept for
/// symmetry with [`exact_improvement_probability`].
pub fn exact_success_probability(
    tree: &Tree,
    n: usize,
    _measure: Measure,
) -> Result<Prob, OracleError> {
    if is_optimal(tree, n) {
        return Err(OracleError::AlreadyOptimal);
    }
    let mut total = Prob::zero();
    for_each_single_mutation(tree, n, |_, result, p| {
        if is_optimal(&result, n) {
            total += p;
        }
    })?;
    Ok(total)
}

/// Probability that one sub-operation strictly improves fitness under
/// `measure`.
pub fn exact_improvement_probability(
    tree: &Tree,
    n: usize,
    measure: Measure,
) -> Result<Prob, OracleError> {
    let current = evaluate(tree, measure, n);
    let mut total = Prob::zero();
    for_each_single_mutation(tree, n, |_, result, p| {
        let f = evaluate(&result, measure, n);
        if better(measure, f, current).expect("same measure") {
            total += p;
        }
    })?;
    Ok(total)
}

/// Minimal number of transpositions to reach the identity, by breadth-first
/// search over all permutations.
pub fn brute_force_exc(elements: &[Label]) -> Result<u64, OracleError> {
    let n = elements.len();
    if n > BFS_EXC_MAX_N {
        return Err(OracleError::SizeGuard {
            len: n,
            limit: BFS_EXC_MAX_N,
        });
    }
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(OracleError::Incomplete);
    }
    let target: Vec<Label> = (1..=n).collect();
    let mut dist: HashMap<Vec<Label>, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(elements.to_vec(), 0);
    queue.push_back(elements.to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if cur == target {
            return Ok(d);
        }
        for a in 0..n {
            for b in a + 1..n {
                let mut next = cur.clone();
                next.swap(a, b);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    unreachable!("identity is reachable from every permutation")
}

/// Definition-literal fitness of a duplicate-free sequence.
pub fn naive_fitness(elements: &[Label], measure: Measure, n: usize) -> Result<u64, OracleError> {
    let complete = elements.len() == n;
    let pos = |x: Label| elements.iter().position(|&e| e == x);
    Ok(match measure {
        Measure::Inv => {
            let mut count = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    if let (Some(pi), Some(pj)) = (pos(i), pos(j)) {
                        if pi < pj {
                            count += 1;
                        }
                    }
                }
            }
            count
        }
        Measure::Ham => (1..=n).filter(|&x| pos(x) == Some(x - 1)).count() as u64,
        Measure::Run => {
            if !complete {
                n as u64 + 1
            } else {
                1 + (0..n.saturating_sub(1))
                    .filter(|&i| elements[i + 1] < elements[i])
                    .count() as u64
            }
        }
        Measure::Las => {
            let m = elements.len();
            if m > EXHAUSTIVE_LAS_MAX {
                return Err(OracleError::SizeGuard {
                    len: m,
                    limit: EXHAUSTIVE_LAS_MAX,
                });
            }
            let mut best = 0;
            for mask in 0u32..(1 << m) {
                let chosen: Vec<Label> = (0..m)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| elements[i])
                    .collect();
                if chosen.windows(2).all(|w| w[0] < w[1]) {
                    best = best.max(chosen.len() as u64);
                }
            }
            best
        }
        Measure::Exc => {
            if !complete {
                n as u64 + 1
            } else {
                // walk label -> position cycles
                let mut seen = vec![false; n + 1];
                let mut cycles = 0;
                for x in 1..=n {
                    if seen[x] {
                        continue;
                    }
                    cycles += 1;
                    let mut y = x;
                    while !seen[y] {
                        seen[y] = true;
                        y = pos(y).expect("complete") + 1;
                    }
                }
                (n - cycles) as u64
            }
        }
    })
}

/// One near-optimal leaf pattern from the lower-bound case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCase {
    pub name: String,
    pub leaves: Vec<Label>,
    /// Sub-operation kinds that must admit at least one optimizing instance.
    pub expected_kinds: BTreeSet<MutationKind>,
    /// Whether a deletion is among the optimizing sub-operations.
    pub deletion_assisted: bool,
    /// Exact number of optimizing substitutions.
    pub expected_substitutions: usize,
}

/// Missing element `i`; its neighbors appear as runs of two so that both
/// insertion and substitution can restore it.
pub fn case1_missing(n: usize, i: usize) -> Vec<Label> {
    assert!(n >= 3 && (1..=n).contains(&i));
    let mut leaves = Vec::new();
    for x in 1..=n {
        if x == i {
            continue;
        }
        leaves.push(x);
        if x + 1 == i || x == i + 1 {
            leaves.push(x);
        }
    }
    leaves
}

/// Element `x` misplaced in front of `i`, with `i - 1` and `i` doubled.
/// `i = 1` is the leading-position case.
pub fn case2_misplaced(n: usize, i: usize, x: Label) -> Vec<Label> {
    assert!(n >= 3 && (1..=n).contains(&i) && x > i && x <= n);
    let mut leaves = Vec::new();
    for y in 1..i {
        leaves.push(y);
        if y + 1 == i {
            leaves.push(y);
        }
    }
    leaves.push(x);
    leaves.extend([i, i]);
    leaves.extend(i + 1..=n);
    leaves
}

fn kinds(ks: &[MutationKind]) -> BTreeSet<MutationKind> {
    ks.iter().copied().collect()
}

/// Every case pattern for a given `n`. Misplaced elements skip `x = i + 1`,
/// where inserting `i` in front of `x` would also succeed.
///
/// Substitution counts are the exact enumerated values; for a misplaced `x`
/// in front of `i >= 3` they exceed two.
pub fn lemma_cases(n: usize) -> Vec<LemmaCase> {
    use MutationKind::*;
    let mut cases = vec![LemmaCase {
        name: "case1 missing i=1".into(),
        leaves: case1_missing(n, 1),
        expected_kinds: kinds(&[Insert, Substitute]),
        deletion_assisted: false,
        expected_substitutions: 1,
    }];
    for i in 2..n {
        cases.push(LemmaCase {
            name: format!("case1 missing i={i}"),
            leaves: case1_missing(n, i),
            expected_kinds: kinds(&[Insert, Substitute]),
            deletion_assisted: false,
            expected_substitutions: 2,
        });
    }
    cases.push(LemmaCase {
        name: format!("case1 missing i={n}"),
        leaves: case1_missing(n, n),
        expected_kinds: kinds(&[Insert, Substitute]),
        deletion_assisted: false,
        expected_substitutions: 1,
    });
    for x in 3..=n {
        cases.push(LemmaCase {
            name: format!("case2 p=1 x={x}"),
            leaves: case2_misplaced(n, 1, x),
            expected_kinds: kinds(&[Delete, Substitute]),
            deletion_assisted: true,
            expected_substitutions: 1,
        });
    }
    for i in 2..n {
        for x in i + 2..=n {
            cases.push(LemmaCase {
                name: format!("case2 i={i} x={x}"),
                leaves: case2_misplaced(n, i, x),
                expected_kinds: kinds(&[Delete, Substitute]),
                deletion_assisted: true,
                // x may become any label in 1..=i: those below i are already
                // expressed, so the copy is suppressed
                expected_substitutions: i,
            });
        }
    }
    cases
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub case: LemmaCase,
    pub successful_kinds: BTreeSet<MutationKind>,
    /// Optimizing instances per kind.
    pub instance_counts: BTreeMap<MutationKind, usize>,
    /// Distinct labels among optimizing insertions.
    pub insertion_labels: BTreeSet<Label>,
    /// Distinct leaf lists produced by optimizing insertions.
    pub insertion_positions: usize,
    pub success_probability: Prob,
    /// More than two optimizing substitutions exist.
    pub substitution_bound_exceeded: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub n: usize,
    pub cases: Vec<CaseReport>,
    /// Substituting the leading 2 of `(2, 3, ..., n)` by 1 must not be optimal.
    pub counterexample_holds: bool,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexample_holds && self.cases.iter().all(|c| c.passed)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "single-step optimizing sub-operations, n={}", self.n)?;
        for c in &self.cases {
            let kinds: Vec<&str> = c.successful_kinds.iter().map(|k| k.name()).collect();
            let counts: Vec<String> = c
                .instance_counts
                .iter()
                .map(|(k, v)| format!("{}={v}", k.name()))
                .collect();
            writeln!(
                f,
                "  [{}] {:<22} l={:?} kinds={{{}}} instances[{}] insert_positions={} p={}{}",
                if c.passed { "ok" } else { "FAIL" },
                c.case.name,
                c.case.leaves,
                kinds.join(","),
                counts.join(" "),
                c.insertion_positions,
                c.success_probability,
                if c.substitution_bound_exceeded {
                    " (more than 2 substitutions)"
                } else {
                    ""
                }
            )?;
        }
        writeln!(
            f,
            "  [{}] counterexample: (2,3,...,n) with 2->1 is not optimal",
            if self.counterexample_holds {
                "ok"
            } else {
                "FAIL"
            }
        )
    }
}

/// Enumerates the neighborhood of each case tree and checks which kinds of
/// sub-operation reach the optimum: exactly the expected kinds, the exact
/// substitution count, at most one deletion, insertions of a single label
/// only.
pub fn verify_lemma1_cases(n: usize) -> Result<LemmaReport, OracleError> {
    if !(3..=16).contains(&n) {
        return Err(OracleError::LemmaRange(n));
    }
    let mut reports = Vec::new();
    for case in lemma_cases(n) {
        let tree = Tree::comb(&case.leaves, n)?;
        let mut successful_kinds = BTreeSet::new();
        let mut instance_counts = BTreeMap::new();
        let mut insertion_labels = BTreeSet::new();
        let mut insertion_outcomes = BTreeSet::new();
        let mut total = Prob::zero();
        let optimal_start = is_optimal(&tree, n);
        for_each_single_mutation(&tree, n, |instance, result, p| {
            if !is_optimal(&result, n) {
                return;
            }
            total += p;
            successful_kinds.insert(instance.kind());
            *instance_counts.entry(instance.kind()).or_insert(0) += 1;
            if let MutationInstance::Insert { label, .. } = instance {
                insertion_labels.insert(label);
                insertion_outcomes.insert(result.leaves());
            }
        })?;
        let count = |k| instance_counts.get(&k).copied().unwrap_or(0);
        let substitutions = count(MutationKind::Substitute);
        let passed = !optimal_start
            && successful_kinds == case.expected_kinds
            && substitutions == case.expected_substitutions
            && count(MutationKind::Delete) <= 1
            && insertion_labels.len() <= 1;
        reports.push(CaseReport {
            case,
            successful_kinds,
            instance_counts,
            insertion_labels,
            insertion_positions: insertion_outcomes.len(),
            success_probability: total,
            substitution_bound_exceeded: substitutions > 2,
            passed,
        });
    }
    let guard: Vec<Label> = (2..=n).collect();
    let guard_tree = Tree::comb(&guard, n)?;
    let swapped = MutationInstance::Substitute {
        target: 0,
        label: 1,
    }
    .apply(&guard_tree)?;
    Ok(LemmaReport {
        n,
        cases: reports,
        counterexample_holds: !is_optimal(&swapped, n),
    })
}

pub fn prob_to_f64(p: &Prob) -> f64 {
    *p.numer() as f64 / *p.denom() as f64
}
