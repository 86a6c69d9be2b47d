//! Binary join-trees over the terminal set `{1, ..., n}`.
//!
//! A tree is stored as its in-order node sequence, each node tagged with its
//! depth. In a full binary tree the in-order sequence alternates
//! leaf, join, leaf, ..., leaf, so the `k`-th leaf sits at index `2k` and
//! every join sits at an odd index. That index is the node's identity for
//! uniform node selection, and the subtree rooted at any node is the maximal
//! contiguous run around it whose depths exceed its own.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// A leaf label, `1..=n`.
pub type Label = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("label {label} outside terminal set 1..={n}")]
    LabelOutOfRange { label: Label, n: usize },
    #[error("cannot build a tree from an empty leaf list")]
    EmptyLeafList,
    #[error("terminal set size {0} too small (need n >= {1})")]
    TerminalSetTooSmall(usize, usize),
    #[error("invalid init config: {0}")]
    InvalidConfig(String),
    #[error("malformed tree expression: {0}")]
    Parse(String),
    #[error("node index {index} out of range for tree with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },
    #[error("node {0} is not a leaf")]
    NotALeaf(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Slot {
    Leaf(Label),
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Entry {
    pub(crate) slot: Slot,
    pub(crate) depth: u32,
}

/// Which side of the join the freshly inserted leaf goes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Full binary tree whose internal nodes are the join function `J` and whose
/// leaves carry labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    nodes: Vec<Entry>,
}

impl Tree {
    /// Single-leaf tree. Fails unless `1 <= label <= n`.
    pub fn leaf(label: Label, n: usize) -> Result<Tree, TreeError> {
        check_label(label, n)?;
        Ok(Tree::leaf_unchecked(label))
    }

    pub(crate) fn leaf_unchecked(label: Label) -> Tree {
        Tree {
            nodes: vec![Entry {
                slot: Slot::Leaf(label),
                depth: 0,
            }],
        }
    }

    /// `J(left, right)`.
    pub fn join(left: Tree, right: Tree) -> Tree {
        let mut nodes = Vec::with_capacity(left.nodes.len() + right.nodes.len() + 1);
        nodes.extend(left.nodes.into_iter().map(deeper));
        nodes.push(Entry {
            slot: Slot::Join,
            depth: 0,
        });
        nodes.extend(right.nodes.into_iter().map(deeper));
        Tree { nodes }
    }

    /// Left-deep comb `J(J(...J(l1, l2)...), lm)` whose in-order leaves are
    /// exactly `labels`.
    pub fn comb(labels: &[Label], n: usize) -> Result<Tree, TreeError> {
        if labels.is_empty() {
            return Err(TreeError::EmptyLeafList);
        }
        for &label in labels {
            check_label(label, n)?;
        }
        let m = labels.len() as u32;
        let mut nodes = Vec::with_capacity(2 * labels.len() - 1);
        for (k, &label) in labels.iter().enumerate() {
            let k = k as u32;
            if k > 0 {
                // join J_{k+1} (1-based) has depth m - (k + 1)
                nodes.push(Entry {
                    slot: Slot::Join,
                    depth: m - k - 1,
                });
            }
            let depth = if k == 0 { m - 1 } else { m - k };
            nodes.push(Entry {
                slot: Slot::Leaf(label),
                depth,
            });
        }
        Ok(Tree { nodes })
    }

    /// Comb with leaf list `n` repeated `n + 1` times, then `1, 2, ..., n`.
    pub fn worst_case_w1(n: usize) -> Result<Tree, TreeError> {
        if n < 3 {
            return Err(TreeError::TerminalSetTooSmall(n, 3));
        }
        let labels: Vec<Label> = std::iter::repeat_n(n, n + 1).chain(1..=n).collect();
        Tree::comb(&labels, n)
    }

    /// Comb with leaf list `n` repeated `n + 1` times, then `2, 3, ..., n-1, 1, n`.
    pub fn worst_case_w2(n: usize) -> Result<Tree, TreeError> {
        if n < 3 {
            return Err(TreeError::TerminalSetTooSmall(n, 3));
        }
        let labels: Vec<Label> = std::iter::repeat_n(n, n + 1)
            .chain(2..n)
            .chain([1, n])
            .collect();
        Tree::comb(&labels, n)
    }

    /// Left-to-right leaf labels.
    pub fn leaves(&self) -> Vec<Label> {
        self.leaf_iter().collect()
    }

    pub fn leaf_iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.nodes.iter().step_by(2).map(|e| match e.slot {
            Slot::Leaf(label) => label,
            Slot::Join => unreachable!("even in-order index holds a join"),
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.len().div_ceil(2)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `(leaf_count, node_count)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.leaf_count(), self.node_count())
    }

    /// Length of the longest root-to-leaf path in edges.
    pub fn depth(&self) -> u32 {
        self.nodes.iter().map(|e| e.depth).max().unwrap_or(0)
    }

    /// Largest leaf label.
    pub fn max_label(&self) -> Label {
        self.leaf_iter().max().unwrap_or(0)
    }

    pub fn is_leaf(&self, index: usize) -> bool {
        index.is_multiple_of(2) && index < self.nodes.len()
    }

    /// In-order index of the `k`-th leaf (0-based).
    pub fn leaf_index(k: usize) -> usize {
        2 * k
    }

    /// Label of the node at `index`, or `None` for a join.
    pub fn label_at(&self, index: usize) -> Option<Label> {
        match self.nodes.get(index)?.slot {
            Slot::Leaf(label) => Some(label),
            Slot::Join => None,
        }
    }

    /// Inclusive in-order range covered by the subtree rooted at `index`.
    pub fn subtree_span(&self, index: usize) -> (usize, usize) {
        let d = self.nodes[index].depth;
        let mut start = index;
        while start > 0 && self.nodes[start - 1].depth > d {
            start -= 1;
        }
        let mut end = index;
        while end + 1 < self.nodes.len() && self.nodes[end + 1].depth > d {
            end += 1;
        }
        (start, end)
    }

    /// Relabel the leaf at in-order `index`.
    pub fn with_substitution(&self, index: usize, label: Label) -> Result<Tree, TreeError> {
        self.check_leaf(index)?;
        let mut out = self.clone();
        out.nodes[index].slot = Slot::Leaf(label);
        Ok(out)
    }

    /// Replace the node at `index` by a join whose children are a new leaf
    /// `label` and the old subtree, the new leaf on `side`.
    pub fn with_insertion(
        &self,
        index: usize,
        label: Label,
        side: Side,
    ) -> Result<Tree, TreeError> {
        self.check_node(index)?;
        let (start, end) = self.subtree_span(index);
        let d = self.nodes[index].depth;
        let new_leaf = Entry {
            slot: Slot::Leaf(label),
            depth: d + 1,
        };
        let new_join = Entry {
            slot: Slot::Join,
            depth: d,
        };
        let mut nodes = Vec::with_capacity(self.nodes.len() + 2);
        nodes.extend_from_slice(&self.nodes[..start]);
        if side == Side::Left {
            nodes.push(new_leaf);
            nodes.push(new_join);
        }
        nodes.extend(self.nodes[start..=end].iter().copied().map(deeper));
        if side == Side::Right {
            nodes.push(new_join);
            nodes.push(new_leaf);
        }
        nodes.extend_from_slice(&self.nodes[end + 1..]);
        Ok(Tree { nodes })
    }

    /// Remove the leaf at `index` together with its parent; the sibling
    /// subtree takes the parent's place. A single-leaf tree is returned
    /// unchanged.
    pub fn with_deletion(&self, index: usize) -> Result<Tree, TreeError> {
        self.check_leaf(index)?;
        if self.nodes.len() == 1 {
            return Ok(self.clone());
        }
        let d = self.nodes[index].depth;
        let parent = if index + 1 < self.nodes.len() && self.nodes[index + 1].depth + 1 == d {
            index + 1
        } else {
            index - 1
        };
        let pd = self.nodes[parent].depth;
        // the sibling subtree lies on the far side of the parent
        let (sib_start, sib_end) = if parent > index {
            let mut end = parent + 1;
            while end + 1 < self.nodes.len() && self.nodes[end + 1].depth > pd {
                end += 1;
            }
            (parent + 1, end)
        } else {
            let mut start = parent - 1;
            while start > 0 && self.nodes[start - 1].depth > pd {
                start -= 1;
            }
            (start, parent - 1)
        };
        let lo = index.min(sib_start);
        let hi = index.max(sib_end);
        let mut nodes = Vec::with_capacity(self.nodes.len() - 2);
        nodes.extend_from_slice(&self.nodes[..lo]);
        nodes.extend(self.nodes[sib_start..=sib_end].iter().map(|e| Entry {
            depth: e.depth - 1,
            ..*e
        }));
        nodes.extend_from_slice(&self.nodes[hi + 1..]);
        Ok(Tree { nodes })
    }

    fn check_node(&self, index: usize) -> Result<(), TreeError> {
        if index >= self.nodes.len() {
            return Err(TreeError::NodeOutOfRange {
                index,
                node_count: self.nodes.len(),
            });
        }
        Ok(())
    }

    fn check_leaf(&self, index: usize) -> Result<(), TreeError> {
        self.check_node(index)?;
        if !index.is_multiple_of(2) {
            return Err(TreeError::NotALeaf(index));
        }
        Ok(())
    }

    /// Structural self-check: alternation, a single root, and depths that
    /// describe a full binary tree.
    pub fn is_well_formed(&self) -> bool {
        if self.nodes.len().is_multiple_of(2) {
            return false;
        }
        let alternates = self.nodes.iter().enumerate().all(|(i, e)| match e.slot {
            Slot::Leaf(label) => i % 2 == 0 && label >= 1,
            Slot::Join => i % 2 == 1,
        });
        if !alternates {
            return false;
        }
        // rebuild bottom-up: repeatedly merge (child, J, child) triples whose
        // children sit exactly one level below the join
        let mut stack: Vec<(bool, u32)> = Vec::new(); // (is_complete_subtree, depth)
        for e in &self.nodes {
            match e.slot {
                Slot::Leaf(_) => {
                    let mut cur = e.depth;
                    loop {
                        let n = stack.len();
                        if n >= 2 && !stack[n - 1].0 && stack[n - 2].0 && stack[n - 2].1 == cur {
                            let join_depth = stack[n - 1].1;
                            if join_depth + 1 != cur {
                                return false;
                            }
                            stack.truncate(n - 2);
                            cur = join_depth;
                        } else {
                            break;
                        }
                    }
                    stack.push((true, cur));
                }
                Slot::Join => stack.push((false, e.depth)),
            }
        }
        stack.len() == 1 && stack[0] == (true, 0)
    }
}

fn deeper(e: Entry) -> Entry {
    Entry {
        depth: e.depth + 1,
        ..e
    }
}

fn check_label(label: Label, n: usize) -> Result<(), TreeError> {
    if label == 0 || label > n {
        return Err(TreeError::LabelOutOfRange { label, n });
    }
    Ok(())
}

impl fmt::Display for Tree {
    /// Renders as a nested expression, e.g. `J(J(2,5),1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn render(nodes: &[Entry], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if nodes.len() == 1 {
                if let Slot::Leaf(label) = nodes[0].slot {
                    return write!(f, "{label}");
                }
            }
            let top = nodes.iter().map(|e| e.depth).min().unwrap_or(0);
            let root = nodes
                .iter()
                .position(|e| e.depth == top && e.slot == Slot::Join)
                .expect("subtree with more than one node has a join root");
            write!(f, "J(")?;
            render(&nodes[..root], f)?;
            write!(f, ",")?;
            render(&nodes[root + 1..], f)?;
            write!(f, ")")
        }
        render(&self.nodes, f)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({self})")
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    /// Parses the `J(a,b)` notation produced by `Display`. Labels must be
    /// positive; the terminal-set bound is not known here.
    fn from_str(s: &str) -> Result<Tree, TreeError> {
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_expr(&compact, &mut pos)?;
        if pos != compact.len() {
            return Err(TreeError::Parse(format!("trailing input at {pos}")));
        }
        Ok(tree)
    }
}

fn parse_expr(s: &[char], pos: &mut usize) -> Result<Tree, TreeError> {
    let expect = |pos: &mut usize, c: char| -> Result<(), TreeError> {
        if s.get(*pos) == Some(&c) {
            *pos += 1;
            Ok(())
        } else {
            Err(TreeError::Parse(format!("expected '{c}' at {pos}")))
        }
    };
    match s.get(*pos) {
        Some('J') => {
            *pos += 1;
            expect(pos, '(')?;
            let left = parse_expr(s, pos)?;
            expect(pos, ',')?;
            let right = parse_expr(s, pos)?;
            expect(pos, ')')?;
            Ok(Tree::join(left, right))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while s.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let text: String = s[start..*pos].iter().collect();
            let label: Label = text
                .parse()
                .map_err(|_| TreeError::Parse(format!("bad label '{text}'")))?;
            if label == 0 {
                return Err(TreeError::Parse("label 0".into()));
            }
            Ok(Tree::leaf_unchecked(label))
        }
        _ => Err(TreeError::Parse(format!("unexpected input at {pos}"))),
    }
}

/// How [`random_init`] shapes the initial tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitMode {
    /// Recursive growth: each growth point becomes a join with probability
    /// `p_join`, forced to a leaf at `depth_cap`.
    Grow,
    /// Comb over a uniformly random permutation of `1..=n`.
    PermComb,
    W1,
    W2,
    /// Comb over the given labels.
    Explicit(Vec<Label>),
}

impl InitMode {
    pub fn name(&self) -> &'static str {
        match self {
            InitMode::Grow => "grow",
            InitMode::PermComb => "perm",
            InitMode::W1 => "w1",
            InitMode::W2 => "w2",
            InitMode::Explicit(_) => "explicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitConfig {
    pub n: usize,
    pub mode: InitMode,
    pub p_join: f64,
    pub depth_cap: u32,
}

impl InitConfig {
    /// Defaults: `p_join = 0.5`, `depth_cap = ceil(log2 n) + 2`.
    pub fn new(n: usize, mode: InitMode) -> InitConfig {
        InitConfig {
            n,
            mode,
            p_join: 0.5,
            depth_cap: default_depth_cap(n),
        }
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        if self.n < 2 {
            return Err(TreeError::TerminalSetTooSmall(self.n, 2));
        }
        if !(0.0..1.0).contains(&self.p_join) {
            return Err(TreeError::InvalidConfig(format!(
                "p_join {} not in [0, 1)",
                self.p_join
            )));
        }
        if self.depth_cap < 1 {
            return Err(TreeError::InvalidConfig("depth_cap must be >= 1".into()));
        }
        if let InitMode::Explicit(labels) = &self.mode {
            if labels.is_empty() {
                return Err(TreeError::EmptyLeafList);
            }
        }
        Ok(())
    }
}

pub fn default_depth_cap(n: usize) -> u32 {
    (n.max(1) as f64).log2().ceil() as u32 + 2
}

/// Draws an initial tree according to `cfg`.
pub fn random_init<R: Rng + ?Sized>(cfg: &InitConfig, rng: &mut R) -> Result<Tree, TreeError> {
    cfg.validate()?;
    let n = cfg.n;
    match &cfg.mode {
        InitMode::Grow => Ok(grow(cfg, 0, rng)),
        InitMode::PermComb => {
            let mut labels: Vec<Label> = (1..=n).collect();
            rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), rng);
            Tree::comb(&labels, n)
        }
        InitMode::W1 => Tree::worst_case_w1(n),
        InitMode::W2 => Tree::worst_case_w2(n),
        InitMode::Explicit(labels) => Tree::comb(labels, n),
    }
}

fn grow<R: Rng + ?Sized>(cfg: &InitConfig, depth: u32, rng: &mut R) -> Tree {
    if depth < cfg.depth_cap && rng.gen_bool(cfg.p_join) {
        let left = grow(cfg, depth + 1, rng);
        let right = grow(cfg, depth + 1, rng);
        Tree::join(left, right)
    } else {
        Tree::leaf_unchecked(rng.gen_range(1..=cfg.n))
    }
}
