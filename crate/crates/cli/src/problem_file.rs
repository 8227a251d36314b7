//! Problem file (JSON) loading and writing.

use std::path::Path;

use multipoint_core::linalg::ComplexMatrix;
use multipoint_core::model::{IntervalConfig, ProblemDefinition, ToleranceConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::json::{cx, from_cx, JsonComplex};

/// Row-major `d x d` matrix of `[re, im]` pairs.
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    pub a1: f64,
    pub a2: f64,
    pub b2: f64,
    pub a3: f64,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_outer: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_inner: Option<usize>,
    #[serde(rename = "A1")]
    pub coeff1: JsonMatrix,
    #[serde(rename = "A2")]
    pub coeff2: JsonMatrix,
    #[serde(rename = "A3")]
    pub coeff3: JsonMatrix,
    #[serde(rename = "W1")]
    pub w1: JsonMatrix,
    #[serde(rename = "W2")]
    pub w2: JsonMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eig_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature_rtol: Option<f64>,
}

impl ToleranceOverrides {
    fn apply(&self, mut t: ToleranceConfig) -> ToleranceConfig {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.eig_tol, self.eig_tol);
        set(&mut t.hermitian_tol, self.hermitian_tol);
        set(&mut t.unitary_tol, self.unitary_tol);
        set(&mut t.pivot_tol, self.pivot_tol);
        set(&mut t.residual_tol, self.residual_tol);
        set(&mut t.quadrature_rtol, self.quadrature_rtol);
        t
    }

    fn full(t: &ToleranceConfig) -> Self {
        Self {
            eig_tol: Some(t.eig_tol),
            hermitian_tol: Some(t.hermitian_tol),
            unitary_tol: Some(t.unitary_tol),
            pivot_tol: Some(t.pivot_tol),
            residual_tol: Some(t.residual_tol),
            quadrature_rtol: Some(t.quadrature_rtol),
        }
    }
}

fn matrix(name: &str, rows: &JsonMatrix, dim: usize) -> Result<ComplexMatrix, CliError> {
    if rows.len() != dim {
        return Err(CliError::Validation(format!("{name}: expected {dim} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::Validation(format!(
                "{name}: row {r} has {} entries, expected {dim}",
                row.len()
            )));
        }
        data.extend(row.iter().map(|&z| from_cx(z)));
    }
    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(CliError::Validation(format!("{name}: non-finite entry")));
    }
    Ok(ComplexMatrix::from_row_major(dim, dim, data)?)
}

fn to_json_matrix(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| cx(m[(r, c)])).collect()).collect()
}

impl ProblemFile {
    pub fn into_problem(self) -> Result<ProblemDefinition, CliError> {
        if self.dim == 0 {
            return Err(CliError::Validation("dim: dimension must be positive".into()));
        }
        let intervals = IntervalConfig::with_grid(
            self.a1,
            self.a2,
            self.b2,
            self.a3,
            self.truncation.unwrap_or(IntervalConfig::DEFAULT_TRUNCATION),
            self.n_outer.unwrap_or(IntervalConfig::DEFAULT_POINTS),
            self.n_inner.unwrap_or(IntervalConfig::DEFAULT_POINTS),
        )?;
        let tolerances = match &self.tolerances {
            Some(o) => o.apply(ToleranceConfig::default()),
            None => ToleranceConfig::default(),
        };
        tolerances.validate()?;
        let d = self.dim;
        let a = [matrix("A1", &self.coeff1, d)?, matrix("A2", &self.coeff2, d)?, matrix("A3", &self.coeff3, d)?];
        let w1 = matrix("W1", &self.w1, d)?;
        let w2 = matrix("W2", &self.w2, d)?;
        Ok(ProblemDefinition::from_matrices(intervals, a, w1, w2, tolerances)?)
    }

    /// Complete description of `problem`, including grid sizes and tolerances.
    pub fn from_problem(problem: &ProblemDefinition) -> Self {
        let iv = problem.intervals();
        Self {
            dim: problem.dim(),
            a1: iv.a1(),
            a2: iv.a2(),
            b2: iv.b2(),
            a3: iv.a3(),
            truncation: Some(iv.truncation()),
            n_outer: Some(iv.n_outer()),
            n_inner: Some(iv.n_inner()),
            coeff1: to_json_matrix(problem.a1().as_matrix()),
            coeff2: to_json_matrix(problem.a2().as_matrix()),
            coeff3: to_json_matrix(problem.a3().as_matrix()),
            w1: to_json_matrix(problem.w1().as_matrix()),
            w2: to_json_matrix(problem.w2().as_matrix()),
            tolerances: Some(ToleranceOverrides::full(problem.tolerances())),
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemDefinition, CliError> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("problem file: {e}")))?;
    file.into_problem()
}

pub fn load_problem(path: &Path) -> Result<ProblemDefinition, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_problem(&text).map_err(|e| match e {
        CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn problem_to_json(problem: &ProblemDefinition) -> String {
    crate::json::to_string(&ProblemFile::from_problem(problem))
}
