//! Tree-based (1+1) genetic programming on the sorting problem.
//!
//! Programs are binary trees whose internal nodes are a join `J` and whose
//! leaves are labels `1..=n`. A tree's fitness is a sortedness measure of the
//! permutation its leaves express in order, first occurrences only.
//!
//! - [`tree`]: trees, initialization, worst-case start trees
//! - [`sortedness`]: expressed permutations and INV, HAM, RUN, LAS, EXC
//! - [`mutation`]: HVL-mutate' sub-operations and the `k` sampler
//! - [`engine`]: the (1+1) GP* run loop
//! - [`oracle`]: exact neighborhood enumeration and reference implementations
//! - [`harness`]: seeded experiment campaigns, CSV output, log-log fits

pub mod engine;
pub mod harness;
pub mod mutation;
pub mod oracle;
pub mod sortedness;
pub mod tree;

pub use engine::{run, RunConfig, RunRecord};
pub use mutation::{MutationInstance, MutationKind, Variant};
pub use sortedness::{evaluate, ExpressedPermutation, Fitness, Measure};
pub use tree::{InitConfig, InitMode, Label, Tree};
