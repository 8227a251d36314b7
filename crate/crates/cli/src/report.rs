//! Serialized forms of the library results.

use std::io::Write;

use multipoint_core::oracle::{MatchReport, SweepResult};
use multipoint_core::resolvent::ResolventSolution;
use multipoint_core::spectrum::{SpectrumEntry, SpectrumReport};
use serde::Serialize;

use crate::error::CliError;
use crate::json::{cvec, cx, format_f64, JsonComplex};
use crate::samples::GridOutput;

#[derive(Debug, Serialize)]
pub struct EntryJson {
    pub lambda: f64,
    pub mu: JsonComplex,
    pub theta: f64,
    pub branch_n: i64,
    pub mode_j: usize,
    pub eigvec: Vec<JsonComplex>,
    pub ode_residual: f64,
    pub bc_residual: f64,
}

impl From<&SpectrumEntry> for EntryJson {
    fn from(e: &SpectrumEntry) -> Self {
        Self {
            lambda: e.lambda,
            mu: cx(e.mu),
            theta: e.theta,
            branch_n: e.branch_n,
            mode_j: e.mode_j,
            eigvec: cvec(&e.eigvec),
            ode_residual: e.ode_residual,
            bc_residual: e.bc_residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassificationJson {
    pub outer_point_spectrum_empty: bool,
    pub spectrum_is_real_line: bool,
    pub norm_constancy_deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct ProbeJson {
    pub lambda_i: f64,
    pub lambda_r: f64,
    pub ratio: f64,
    /// `1 / (2 lambda_i)`, the value the ratio should approach.
    pub expected: f64,
}

#[derive(Debug, Serialize)]
pub struct SpectrumReportJson {
    pub window: [f64; 2],
    pub entries: Vec<EntryJson>,
    pub classification: ClassificationJson,
    pub probes: Vec<ProbeJson>,
}

impl From<&SpectrumReport> for SpectrumReportJson {
    fn from(r: &SpectrumReport) -> Self {
        let c = &r.classification;
        Self {
            window: [r.window.0, r.window.1],
            entries: r.entries.iter().map(EntryJson::from).collect(),
            classification: ClassificationJson {
                outer_point_spectrum_empty: c.outer_point_spectrum_empty,
                spectrum_is_real_line: c.spectrum_is_real_line,
                norm_constancy_deviation: c.norm_constancy_deviation,
            },
            probes: r
                .probes
                .iter()
                .map(|p| ProbeJson {
                    lambda_i: p.lambda_i,
                    lambda_r: p.lambda_r,
                    ratio: p.ratio,
                    expected: 0.5 / p.lambda_i,
                })
                .collect(),
        }
    }
}

pub fn spectrum_json(report: &SpectrumReport) -> String {
    crate::json::to_string(&SpectrumReportJson::from(report))
}

/// Eigenvalue table: `lambda, theta, branch_n, mode_j, ode_residual, bc_residual`.
pub fn spectrum_csv(report: &SpectrumReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Validation(format!("csv: {e}"));
    w.write_record(["lambda", "theta", "branch_n", "mode_j", "ode_residual", "bc_residual"]).map_err(csv_err)?;
    for e in &report.entries {
        w.write_record([
            format_f64(e.lambda),
            format_f64(e.theta),
            e.branch_n.to_string(),
            e.mode_j.to_string(),
            format_f64(e.ode_residual),
            format_f64(e.bc_residual),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Validation(format!("csv: {e}")))?;
    w.into_inner().map_err(|e| CliError::Validation(format!("csv: {}", e.error())))
}

#[derive(Debug, Serialize)]
pub struct ResolventJson {
    pub lambda: JsonComplex,
    pub f1star: Option<Vec<JsonComplex>>,
    pub f2star: Option<Vec<JsonComplex>>,
    pub f3star: Option<Vec<JsonComplex>>,
    pub residual_ode: f64,
    pub residual_bc: f64,
    pub u: Vec<GridOutput>,
}

impl From<&ResolventSolution> for ResolventJson {
    fn from(s: &ResolventSolution) -> Self {
        let opt = |v: &Option<Vec<_>>| v.as_deref().map(cvec);
        Self {
            lambda: cx(s.lambda),
            f1star: opt(&s.f1star),
            f2star: opt(&s.f2star),
            f3star: opt(&s.f3star),
            residual_ode: s.residual_ode,
            residual_bc: s.residual_bc,
            u: s.u.parts().map(GridOutput::new).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleCompareJson {
    pub window: [f64; 2],
    pub tol: f64,
    pub matched: Vec<[f64; 2]>,
    pub unmatched_main: Vec<f64>,
    pub unmatched_oracle: Vec<f64>,
    pub max_distance: f64,
    pub warnings: Vec<String>,
}

impl OracleCompareJson {
    pub fn new(window: (f64, f64), tol: f64, m: &MatchReport, sweep: &SweepResult) -> Self {
        Self {
            window: [window.0, window.1],
            tol,
            matched: m.matched.iter().map(|&(a, b)| [a, b]).collect(),
            unmatched_main: m.unmatched_main.clone(),
            unmatched_oracle: m.unmatched_oracle.clone(),
            max_distance: m.max_distance,
            warnings: sweep.warnings.clone(),
        }
    }
}

pub fn write_bytes(path: &std::path::Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use multipoint_core::example::{build_example_problem, ExampleSpec};
    use multipoint_core::spectrum::assemble_report;

    #[test]
    fn csv_has_one_row_per_entry() {
        let p = build_example_problem(&ExampleSpec::new(1, 0.0, 0.0).unwrap()).unwrap();
        let r = assemble_report(&p, (-1.0, 13.0), &[]).unwrap();
        let text = String::from_utf8(spectrum_csv(&r).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "lambda,theta,branch_n,mode_j,ode_residual,bc_residual");
        assert_eq!(lines.len(), 1 + r.entries.len());
        assert_eq!(r.entries.len(), 3);
        assert!(lines[2].starts_with("6.28318530717958"));
    }

    #[test]
    fn report_field_order_is_fixed() {
        let p = build_example_problem(&ExampleSpec::new(1, 0.0, 0.0).unwrap()).unwrap();
        let r = assemble_report(&p, (-1.0, 1.0), &[1.0]).unwrap();
        let text = spectrum_json(&r);
        let pos = |k: &str| text.find(k).unwrap();
        assert!(pos("\"window\"") < pos("\"entries\""));
        assert!(pos("\"entries\"") < pos("\"classification\""));
        assert!(pos("\"classification\"") < pos("\"probes\""));
        assert!(pos("\"lambda\"") < pos("\"mu\""));
    }
}
