use super::{CrossoverRecord, LinkPlan, ShotThreshold, SweepConfig, ThresholdRecord};
use crate::error::Result;
use crate::metrics::FidelityCurve;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// JSON side of a run. Field order is fixed, so equal inputs serialize to
/// equal bytes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub config: Option<SweepConfig>,
    pub thresholds: Vec<ThresholdRecord>,
    pub crossovers: Vec<CrossoverRecord>,
    pub shot_thresholds: Vec<ShotThreshold>,
    pub plan: Option<LinkPlan>,
    /// dF/dN_add of the remote curves.
    pub derivatives: Vec<FidelityCurve>,
}

/// One row per grid point:
/// ghz_size, param_name, param_value, fidelity, stderr, n_seeds.
pub fn write_curves_csv<W: Write>(out: W, curves: &[FidelityCurve]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["ghz_size", "param_name", "param_value", "fidelity", "stderr", "n_seeds"])?;
    for c in curves {
        for i in 0..c.len() {
            w.write_record([
                c.ghz_size.to_string(),
                c.parameter.name().to_string(),
                c.grid[i].to_string(),
                c.values[i].to_string(),
                c.stderr[i].to_string(),
                c.n_seeds.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `<stem>.csv` and/or `<stem>.json` under `dir` and returns the
/// paths written.
pub fn emit_results(
    dir: &Path,
    stem: &str,
    curves: &[FidelityCurve],
    summary: &Summary,
    formats: &[OutputFormat],
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in formats {
        let path = dir.join(format!(
            "{stem}.{}",
            match format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            }
        ));
        let file = std::io::BufWriter::new(std::fs::File::create(&path)?);
        match format {
            OutputFormat::Csv => write_curves_csv(file, curves)?,
            OutputFormat::Json => {
                let mut file = file;
                serde_json::to_writer_pretty(&mut file, summary)?;
                file.write_all(b"\n")?;
                file.flush()?;
            }
        }
        written.push(path);
    }
    Ok(written)
}
