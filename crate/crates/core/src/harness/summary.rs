//! Measure-by-variant status grid built from experiment CSVs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use super::records::header_of;
use super::{read_exact_rows, read_run_rows, ExactRow, HarnessError, RunRow};
use crate::mutation::Variant;
use crate::sortedness::Measure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellStatus {
    /// Every run reached the optimum within budget.
    Solved {
        runs: usize,
    },
    Unsolved {
        hit: usize,
        runs: usize,
    },
    /// Exact single-step improvement probability 0 at every tested size.
    ExactStagnation {
        sizes: usize,
    },
    /// Some tested start tree has a positive improvement probability.
    Improvable {
        sizes: usize,
    },
    /// At least 19 in 20 budgeted runs accepted no improvement.
    StatisticalStagnation {
        stuck: usize,
        runs: usize,
    },
    Escaped {
        stuck: usize,
        runs: usize,
    },
    NoData,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellStatus::Solved { runs } => write!(f, "solved ({runs}/{runs} runs)"),
            CellStatus::Unsolved { hit, runs } => {
                write!(f, "unsolved within budget ({hit}/{runs} hit)")
            }
            CellStatus::ExactStagnation { sizes } => {
                write!(f, "exact stagnation (probability 0, {sizes} sizes)")
            }
            CellStatus::Improvable { sizes } => {
                write!(f, "improvable (p > 0 at some of {sizes} sizes)")
            }
            CellStatus::StatisticalStagnation { stuck, runs } => {
                write!(f, "statistical stagnation ({stuck}/{runs} runs stuck)")
            }
            CellStatus::Escaped { stuck, runs } => write!(f, "escaped ({stuck}/{runs} runs stuck)"),
            CellStatus::NoData => write!(f, "no data"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SummaryTable {
    pub cells: BTreeMap<(Measure, &'static str), CellStatus>,
    /// Input files that could not be read, and grid cells without data.
    pub missing: Vec<String>,
}

impl SummaryTable {
    pub fn cell(&self, measure: Measure, variant: Variant) -> &CellStatus {
        self.cells
            .get(&(measure, variant.name()))
            .unwrap_or(&CellStatus::NoData)
    }
}

impl fmt::Display for SummaryTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single: Vec<String> = Measure::ALL
            .iter()
            .map(|&m| self.cell(m, Variant::Single).to_string())
            .collect();
        let width = single.iter().map(String::len).max().unwrap_or(6).max(6);
        writeln!(f, "{:<8}| {:<width$} | multi", "measure", "single")?;
        writeln!(f, "{}", "-".repeat(8 + width + 30))?;
        for (m, s) in Measure::ALL.iter().zip(&single) {
            writeln!(
                f,
                "{:<8}| {:<width$} | {}",
                m.to_string(),
                s,
                self.cell(*m, Variant::Multi)
            )?;
        }
        if !self.missing.is_empty() {
            writeln!(f, "missing:")?;
            for m in &self.missing {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}

enum Loaded {
    Runs(Vec<RunRow>),
    Exact(Vec<ExactRow>),
    Other,
}

fn load(path: &Path) -> Result<Loaded, HarnessError> {
    let header = header_of(path)?;
    if header.iter().any(|h| h == "improvement_probability") {
        Ok(Loaded::Exact(read_exact_rows(path)?))
    } else if header.iter().any(|h| h == "evaluations") {
        Ok(Loaded::Runs(read_run_rows(path)?))
    } else {
        Ok(Loaded::Other)
    }
}

/// Reads the given CSVs (run rows or exact stagnation rows) and classifies
/// every measure/variant cell. Unreadable inputs and empty cells are listed
/// in `missing`; the rest of the table is still rendered.
pub fn summary_table(inputs: &[PathBuf]) -> SummaryTable {
    let mut runs = Vec::new();
    let mut exact = Vec::new();
    let mut missing = Vec::new();
    for path in inputs {
        match load(path) {
            Ok(Loaded::Runs(rows)) => runs.extend(rows),
            Ok(Loaded::Exact(rows)) => exact.extend(rows),
            Ok(Loaded::Other) => {}
            Err(e) => missing.push(format!("{}: {e}", path.display())),
        }
    }
    let mut cells = BTreeMap::new();
    for measure in Measure::ALL {
        for variant in [Variant::Single, Variant::Multi] {
            let status = classify(measure, variant, &runs, &exact);
            if status == CellStatus::NoData {
                missing.push(format!("{measure}/{variant}: no experiment data"));
            }
            cells.insert((measure, variant.name()), status);
        }
    }
    SummaryTable { cells, missing }
}

fn classify(measure: Measure, variant: Variant, runs: &[RunRow], exact: &[ExactRow]) -> CellStatus {
    let matches = |m: &str, v: &str| m == measure.name() && v == variant.name();
    let exact: Vec<&ExactRow> = exact
        .iter()
        .filter(|r| matches(&r.measure, &r.variant))
        .collect();
    if !exact.is_empty() {
        let sizes = exact.len();
        return if exact.iter().all(|r| r.improvement_probability == "0") {
            CellStatus::ExactStagnation { sizes }
        } else {
            CellStatus::Improvable { sizes }
        };
    }
    let mine: Vec<&RunRow> = runs
        .iter()
        .filter(|r| matches(&r.measure, &r.variant))
        .collect();
    let stagnate: Vec<&&RunRow> = mine.iter().filter(|r| r.kind == "stagnate").collect();
    if !stagnate.is_empty() {
        let total = stagnate.len();
        let stuck = stagnate.iter().filter(|r| r.improvements == 0).count();
        return if stuck * 20 >= total * 19 {
            CellStatus::StatisticalStagnation { stuck, runs: total }
        } else {
            CellStatus::Escaped { stuck, runs: total }
        };
    }
    if mine.is_empty() {
        return CellStatus::NoData;
    }
    let hit = mine.iter().filter(|r| r.hit_optimum).count();
    if hit == mine.len() {
        CellStatus::Solved { runs: hit }
    } else {
        CellStatus::Unsolved {
            hit,
            runs: mine.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::write_csv;

    fn row(kind: &str, measure: &str, variant: &str, hit: bool, improvements: usize) -> RunRow {
        RunRow {
            experiment_id: "t".into(),
            kind: kind.into(),
            measure: measure.into(),
            variant: variant.into(),
            init: "perm".into(),
            n: 4,
            trial: 0,
            seed: 0,
            evaluations: 1,
            hit_optimum: hit,
            best_fitness: 0,
            improvements,
            max_tree_size: 4,
        }
    }

    #[test]
    fn classifies_cells_and_lists_missing() {
        let dir = tempfile::tempdir().unwrap();
        let runs = dir.path().join("runs.csv");
        write_csv(
            &runs,
            &[
                row("scale", "inv", "single", true, 3),
                row("scale", "inv", "multi", true, 2),
                row("stagnate", "ham", "multi", false, 0),
            ],
        )
        .unwrap();
        let exact = dir.path().join("exact.csv");
        write_csv(
            &exact,
            &[ExactRow {
                experiment_id: "e".into(),
                kind: "stagnate".into(),
                measure: "run".into(),
                variant: "single".into(),
                init: "w1".into(),
                n: 5,
                initial_fitness: 2,
                improvement_probability: "0".into(),
            }],
        )
        .unwrap();
        let absent = dir.path().join("absent.csv");
        let table = summary_table(&[runs, exact, absent]);
        assert_eq!(
            table.cell(Measure::Inv, Variant::Single),
            &CellStatus::Solved { runs: 1 }
        );
        assert_eq!(
            table.cell(Measure::Run, Variant::Single),
            &CellStatus::ExactStagnation { sizes: 1 }
        );
        assert_eq!(
            table.cell(Measure::Ham, Variant::Multi),
            &CellStatus::StatisticalStagnation { stuck: 1, runs: 1 }
        );
        assert_eq!(
            table.cell(Measure::Las, Variant::Multi),
            &CellStatus::NoData
        );
        assert!(table.missing.iter().any(|m| m.contains("absent.csv")));
        assert!(table.missing.iter().any(|m| m.contains("LAS/multi")));
        let text = table.to_string();
        assert!(text.contains("solved"));
        assert!(text.contains("exact stagnation (probability 0"));
        assert!(text.contains("statistical stagnation"));
    }
}
