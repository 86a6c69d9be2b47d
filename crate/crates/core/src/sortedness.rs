//! Expressed permutations and the five sortedness measures.
//!
//! A tree's leaf list is turned into a duplicate-free sequence by keeping
//! the first occurrence of every label. The result may miss labels; a missing
//! label has no position. RUN and EXC give such incomplete sequences the
//! penalty value `n + 1`, the other measures read the partial list as is.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{Label, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortednessError {
    #[error("cannot compare {0} fitness with {1} fitness")]
    MeasureMismatch(Measure, Measure),
    #[error("unknown measure '{0}'")]
    UnknownMeasure(String),
}

/// Duplicate-free sequence over `1..=n`, possibly missing some labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpressedPermutation {
    elements: Vec<Label>,
    n: usize,
}

impl ExpressedPermutation {
    /// Keeps the first occurrence of each label, in order. Labels outside
    /// `1..=n` are ignored.
    pub fn express(labels: &[Label], n: usize) -> ExpressedPermutation {
        let mut seen = vec![false; n + 1];
        let mut elements = Vec::with_capacity(n.min(labels.len()));
        for &label in labels {
            if label >= 1 && label <= n && !seen[label] {
                seen[label] = true;
                elements.push(label);
                if elements.len() == n {
                    break;
                }
            }
        }
        ExpressedPermutation { elements, n }
    }

    pub fn of_tree(tree: &Tree, n: usize) -> ExpressedPermutation {
        ExpressedPermutation::express(&tree.leaves(), n)
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.elements.len() == self.n
    }

    pub fn is_identity(&self) -> bool {
        self.is_complete() && self.elements.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// 1-based position of `x`, `None` when `x` is not expressed.
    pub fn position(&self, x: Label) -> Option<usize> {
        self.elements.iter().position(|&e| e == x).map(|p| p + 1)
    }
}

impl fmt::Display for ExpressedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Pairs in correct relative order.
    Inv,
    /// Elements at their own position.
    Ham,
    /// Maximal ascending blocks.
    Run,
    /// Longest ascending subsequence.
    Las,
    /// Minimal number of transpositions to sort.
    Exc,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Inv,
        Measure::Ham,
        Measure::Run,
        Measure::Las,
        Measure::Exc,
    ];

    pub fn direction(self) -> Direction {
        match self {
            Measure::Inv | Measure::Ham | Measure::Las => Direction::Maximize,
            Measure::Run | Measure::Exc => Direction::Minimize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Inv => "inv",
            Measure::Ham => "ham",
            Measure::Run => "run",
            Measure::Las => "las",
            Measure::Exc => "exc",
        }
    }

    /// Value reached exactly on the complete identity.
    pub fn optimum(self, n: usize) -> u64 {
        let n = n as u64;
        match self {
            Measure::Inv => n * (n - 1) / 2,
            Measure::Ham | Measure::Las => n,
            Measure::Run => 1,
            Measure::Exc => 0,
        }
    }

    pub fn value(self, p: &ExpressedPermutation) -> u64 {
        match self {
            Measure::Inv => inv(p),
            Measure::Ham => ham(p),
            Measure::Run => run_measure(p),
            Measure::Las => las(p),
            Measure::Exc => exc(p),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_ascii_uppercase())
    }
}

impl FromStr for Measure {
    type Err = SortednessError;

    fn from_str(s: &str) -> Result<Measure, SortednessError> {
        match s.to_ascii_lowercase().as_str() {
            "inv" => Ok(Measure::Inv),
            "ham" => Ok(Measure::Ham),
            "run" => Ok(Measure::Run),
            "las" => Ok(Measure::Las),
            "exc" => Ok(Measure::Exc),
            _ => Err(SortednessError::UnknownMeasure(s.to_string())),
        }
    }
}

/// Sortedness value tagged with the measure that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fitness {
    pub value: u64,
    pub measure: Measure,
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.measure, self.value)
    }
}

/// Pairs `i < j` (by label) with both present and `i` placed before `j`.
pub fn inv(p: &ExpressedPermutation) -> u64 {
    // count ascending pairs of present elements with a Fenwick tree over labels
    let n = p.n;
    let mut bit = vec![0u64; n + 1];
    let mut correct = 0u64;
    for &x in &p.elements {
        let mut i = x - 1;
        while i > 0 {
            correct += bit[i];
            i &= i - 1;
        }
        let mut i = x;
        while i <= n {
            bit[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    correct
}

/// Elements sitting at their own position.
pub fn ham(p: &ExpressedPermutation) -> u64 {
    p.elements
        .iter()
        .enumerate()
        .filter(|&(i, &x)| x == i + 1)
        .count() as u64
}

/// Descents plus one; `n + 1` when incomplete.
pub fn run_measure(p: &ExpressedPermutation) -> u64 {
    if !p.is_complete() {
        return p.n as u64 + 1;
    }
    p.elements.windows(2).filter(|w| w[1] < w[0]).count() as u64 + 1
}

/// Longest strictly ascending subsequence, by patience sorting.
pub fn las(p: &ExpressedPermutation) -> u64 {
    let mut tails: Vec<Label> = Vec::with_capacity(p.len());
    for &x in &p.elements {
        let at = tails.partition_point(|&t| t < x);
        if at == tails.len() {
            tails.push(x);
        } else {
            tails[at] = x;
        }
    }
    tails.len() as u64
}

/// `n` minus the number of cycles; `n + 1` when incomplete.
pub fn exc(p: &ExpressedPermutation) -> u64 {
    if !p.is_complete() {
        return p.n as u64 + 1;
    }
    p.n as u64 - cycle_count(&p.elements) as u64
}

/// Cycles of the map `position -> element` on a complete permutation.
pub(crate) fn cycle_count(elements: &[Label]) -> usize {
    let mut visited = vec![false; elements.len()];
    let mut cycles = 0;
    for start in 0..elements.len() {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = elements[i] - 1;
        }
    }
    cycles
}

/// Fitness of a tree under `measure`.
pub fn evaluate(tree: &Tree, measure: Measure, n: usize) -> Fitness {
    let p = ExpressedPermutation::of_tree(tree, n);
    Fitness {
        value: measure.value(&p),
        measure,
    }
}

/// True iff `a` strictly improves on `b` in `measure`'s direction.
pub fn better(measure: Measure, a: Fitness, b: Fitness) -> Result<bool, SortednessError> {
    for f in [a, b] {
        if f.measure != measure {
            return Err(SortednessError::MeasureMismatch(measure, f.measure));
        }
    }
    Ok(match measure.direction() {
        Direction::Maximize => a.value > b.value,
        Direction::Minimize => a.value < b.value,
    })
}

/// True iff the tree expresses the complete identity `(1, ..., n)`.
pub fn is_optimal(tree: &Tree, n: usize) -> bool {
    ExpressedPermutation::of_tree(tree, n).is_identity()
}
