//! Oracle cross-checks bundled for the `verify` subcommand.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::HarnessError;
use crate::oracle::{
    brute_force_exc, exact_improvement_probability, for_each_single_mutation, naive_fitness,
    verify_lemma1_cases, LemmaReport, Prob,
};
use crate::sortedness::{exc, ExpressedPermutation, Measure};
use crate::tree::{Label, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub lemma: LemmaReport,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(f, "{}", self.lemma)
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// All duplicate-free sequences over `1..=n`, complete or not.
fn arrangements(n: usize) -> impl Iterator<Item = Vec<Label>> {
    (0..=n).flat_map(move |k| (1..=n).permutations(k))
}

/// Runs every oracle cross-check; `lemma_n` sizes the lower-bound case report.
pub fn verify_suite(lemma_n: usize) -> Result<VerifyReport, HarnessError> {
    let mut checks = Vec::new();

    let p = ExpressedPermutation::express(&[2, 2, 3, 4, 5, 1, 6, 3], 6);
    let values: Vec<u64> = Measure::ALL.iter().map(|m| m.value(&p)).collect();
    checks.push(check(
        "worked example l=(2,2,3,4,5,1,6,3)",
        p.elements() == [2, 3, 4, 5, 1, 6] && values == [11, 1, 2, 5, 4],
        format!("P={p} INV,HAM,RUN,LAS,EXC={values:?}"),
    ));

    let mut mismatches = 0;
    let mut total = 0;
    for n in 1..=5 {
        for perm in (1..=n).permutations(n) {
            total += 1;
            if exc(&ExpressedPermutation::express(&perm, n)) != brute_force_exc(&perm)? {
                mismatches += 1;
            }
        }
    }
    checks.push(check(
        "EXC equals BFS transposition distance (n<=5)",
        mismatches == 0,
        format!("{total} permutations, {mismatches} mismatches"),
    ));

    let mut mismatches = 0;
    let mut total = 0;
    for n in 1..=6 {
        for seq in arrangements(n) {
            let p = ExpressedPermutation::express(&seq, n);
            for m in Measure::ALL {
                total += 1;
                if m.value(&p) != naive_fitness(&seq, m, n)? {
                    mismatches += 1;
                }
            }
        }
    }
    checks.push(check(
        "measures equal naive definitions (n<=6, complete and partial)",
        mismatches == 0,
        format!("{total} evaluations, {mismatches} mismatches"),
    ));

    let mut bad = Vec::new();
    for n in 3..=7 {
        let trees = [
            Tree::worst_case_w1(n)?,
            Tree::worst_case_w2(n)?,
            Tree::comb(&(1..=n).rev().collect::<Vec<_>>(), n)?,
            Tree::leaf_unchecked(n),
        ];
        for t in trees {
            let mut sum = Prob::zero();
            for_each_single_mutation(&t, n, |_, _, p| sum += p)?;
            if !sum.is_one() {
                bad.push(format!("{t} n={n}: {sum}"));
            }
        }
    }
    checks.push(check(
        "enumeration probabilities sum to exactly 1",
        bad.is_empty(),
        if bad.is_empty() {
            "20 trees".into()
        } else {
            bad.join("; ")
        },
    ));

    let mut nonzero = Vec::new();
    for n in 4..=8 {
        let cases = [
            (Tree::worst_case_w1(n)?, Measure::Run, "w1"),
            (Tree::worst_case_w1(n)?, Measure::Las, "w1"),
            (Tree::worst_case_w2(n)?, Measure::Ham, "w2"),
            (Tree::worst_case_w2(n)?, Measure::Exc, "w2"),
        ];
        for (tree, m, name) in cases {
            let p = exact_improvement_probability(&tree, n, m)?;
            if !p.is_zero() {
                nonzero.push(format!("{name}/{m} n={n}: {p}"));
            }
        }
    }
    checks.push(check(
        "worst-case trees admit no single-step improvement (n=4..8)",
        nonzero.is_empty(),
        if nonzero.is_empty() {
            "20 exact zeros".into()
        } else {
            nonzero.join("; ")
        },
    ));

    let lemma = verify_lemma1_cases(lemma_n)?;
    let failing: Vec<&str> = lemma
        .cases
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.case.name.as_str())
        .collect();
    checks.push(check(
        &format!("lower-bound case analysis (n={lemma_n})"),
        lemma.passed(),
        format!(
            "{} cases, {} failing{}, counterexample {}",
            lemma.cases.len(),
            failing.len(),
            if failing.is_empty() {
                String::new()
            } else {
                format!(" ({})", failing.join(", "))
            },
            if lemma.counterexample_holds {
                "holds"
            } else {
                "FAILS"
            }
        ),
    ));

    Ok(VerifyReport { checks, lemma })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_counts() {
        // sum over k of 4!/(4-k)!
        assert_eq!(arrangements(4).count(), 1 + 4 + 12 + 24 + 24);
    }

    #[test]
    fn suite_passes() {
        let report = verify_suite(6).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 6);
    }
}
