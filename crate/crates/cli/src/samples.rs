//! Function sample files: one grid function per file.

use std::path::Path;

use multipoint_core::model::{make_grid, GridFunction, IntervalId, ProblemDefinition};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::json::{cvec, from_cx, JsonComplex};

/// Input format: samples at every node of the problem grid for `interval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleFile {
    pub interval: String,
    pub samples: Vec<Vec<JsonComplex>>,
}

/// Output format: like [`SampleFile`] plus the grid ends.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridOutput {
    pub interval: &'static str,
    pub t_start: f64,
    pub t_end: f64,
    pub samples: Vec<Vec<JsonComplex>>,
}

impl GridOutput {
    pub fn new(g: &GridFunction) -> Self {
        Self {
            interval: g.interval().as_str(),
            t_start: g.t_start(),
            t_end: g.t_end(),
            samples: (0..g.len()).map(|k| cvec(g.sample(k))).collect(),
        }
    }
}

impl SampleFile {
    pub fn new(g: &GridFunction) -> Self {
        Self {
            interval: g.interval().as_str().to_string(),
            samples: (0..g.len()).map(|k| cvec(g.sample(k))).collect(),
        }
    }

    /// Attach the samples to the grid `problem` implies for the named interval.
    pub fn into_grid(self, problem: &ProblemDefinition) -> Result<GridFunction, CliError> {
        let id = IntervalId::parse(&self.interval).ok_or_else(|| {
            CliError::Validation(format!(
                "interval: expected outer_left, inner or outer_right, found {:?}",
                self.interval
            ))
        })?;
        let grid = make_grid(id, problem);
        if self.samples.len() != grid.len() {
            return Err(CliError::Validation(format!(
                "samples: {id} grid has {} nodes, file has {}",
                grid.len(),
                self.samples.len()
            )));
        }
        let d = problem.dim();
        let mut rows = Vec::with_capacity(grid.len());
        for (k, row) in self.samples.iter().enumerate() {
            if row.len() != d {
                return Err(CliError::Validation(format!("samples[{k}]: expected {d} entries, found {}", row.len())));
            }
            let v: Vec<_> = row.iter().map(|&z| from_cx(z)).collect();
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(CliError::Validation(format!("samples[{k}]: non-finite entry")));
            }
            rows.push(v);
        }
        Ok(GridFunction::from_samples(id, grid.t_start(), grid.t_end(), d, &rows)?)
    }
}

pub fn load_samples(path: &Path, problem: &ProblemDefinition) -> Result<GridFunction, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: SampleFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    file.into_grid(problem)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}
