//! CSV rows and plot data files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use super::{ExperimentSpec, HarnessError};
use crate::engine::RunRecord;

/// One trial. Column order is fixed by field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRow {
    pub experiment_id: String,
    pub kind: String,
    pub measure: String,
    pub variant: String,
    pub init: String,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub hit_optimum: bool,
    pub best_fitness: u64,
    pub improvements: usize,
    pub max_tree_size: usize,
}

impl RunRow {
    pub fn from_record(
        id: &str,
        spec: &ExperimentSpec,
        n: usize,
        trial: usize,
        record: &RunRecord,
    ) -> RunRow {
        RunRow {
            experiment_id: id.to_string(),
            kind: spec.kind.name().to_string(),
            measure: spec.measure.name().to_string(),
            variant: spec.variant.name().to_string(),
            init: spec.init.name().to_string(),
            n,
            trial,
            seed: record.seed,
            evaluations: record.evaluations_used,
            hit_optimum: record.hit_optimum,
            best_fitness: record.final_fitness.value,
            improvements: record.improvements.len(),
            max_tree_size: record.max_tree_size_observed,
        }
    }
}

/// Exact single-step improvement probability of a start tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRow {
    pub experiment_id: String,
    pub kind: String,
    pub measure: String,
    pub variant: String,
    pub init: String,
    pub n: usize,
    pub initial_fitness: u64,
    /// `numerator/denominator`, or `0`.
    pub improvement_probability: String,
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

fn read_rows<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .map(|r| r.map_err(HarnessError::from))
        .collect()
}

pub fn read_run_rows(path: &Path) -> Result<Vec<RunRow>, HarnessError> {
    read_rows(path)
}

pub fn read_exact_rows(path: &Path) -> Result<Vec<ExactRow>, HarnessError> {
    read_rows(path)
}

/// `<csv stem>.<series>.dat` next to the CSV.
pub(crate) fn plot_path(csv_path: &Path, series: &str) -> PathBuf {
    let stem = csv_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("out");
    csv_path.with_file_name(format!("{stem}.{series}.dat"))
}

/// Two whitespace-separated columns, one point per line.
pub fn write_plot_data(
    path: &Path,
    header: (&str, &str),
    points: &[(f64, f64)],
) -> Result<(), HarnessError> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {} {}", header.0, header.1)?;
    for (x, y) in points {
        writeln!(out, "{x} {y}")?;
    }
    out.flush()?;
    Ok(())
}

/// Column names of a CSV file's header row.
pub(crate) fn header_of(path: &Path) -> Result<Vec<String>, HarnessError> {
    let mut reader = csv::Reader::from_path(path)?;
    Ok(reader.headers()?.iter().map(str::to_string).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_row_header_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        let row = RunRow {
            experiment_id: "x".into(),
            kind: "scale".into(),
            measure: "inv".into(),
            variant: "single".into(),
            init: "perm".into(),
            n: 4,
            trial: 0,
            seed: 9,
            evaluations: 10,
            hit_optimum: true,
            best_fitness: 6,
            improvements: 2,
            max_tree_size: 5,
        };
        write_csv(&path, std::slice::from_ref(&row)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "experiment_id,kind,measure,variant,init,n,trial,seed,evaluations,hit_optimum,best_fitness,improvements,max_tree_size"
        );
        assert_eq!(read_run_rows(&path).unwrap(), vec![row]);
    }

    #[test]
    fn plot_files_sit_next_to_csv() {
        assert_eq!(
            plot_path(Path::new("out/scale.csv"), "median"),
            PathBuf::from("out/scale.median.dat")
        );
    }
}
