use alloc::vec::Vec;

use crate::spectrum::SpectrumReport;

/// Outcome of matching two eigenvalue lists.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatchReport {
    /// `(main, oracle)` pairs, sorted by the main value.
    pub matched: Vec<(f64, f64)>,
    pub unmatched_main: Vec<f64>,
    pub unmatched_oracle: Vec<f64>,
    pub max_distance: f64,
}

impl MatchReport {
    pub fn is_clean(&self) -> bool {
        self.unmatched_main.is_empty() && self.unmatched_oracle.is_empty()
    }
}

/// Match report entries against oracle roots; see [`match_values`].
pub fn compare_spectra(main: &SpectrumReport, oracle_roots: &[f64], tol: f64) -> MatchReport {
    let lambdas: Vec<f64> = main.entries.iter().map(|e| e.lambda).collect();
    match_values(&lambdas, oracle_roots, tol)
}

/// Greedy nearest-neighbour matching: all pairs within `tol` are taken in order
/// of increasing distance, each value used at most once.
pub fn match_values(main: &[f64], oracle: &[f64], tol: f64) -> MatchReport {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in main.iter().enumerate() {
        for (j, b) in oracle.iter().enumerate() {
            let dist = (a - b).abs();
            if dist <= tol {
                pairs.push((dist, i, j));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_main = alloc::vec![false; main.len()];
    let mut used_oracle = alloc::vec![false; oracle.len()];
    let mut report = MatchReport::default();
    for (dist, i, j) in pairs {
        if used_main[i] || used_oracle[j] {
            continue;
        }
        used_main[i] = true;
        used_oracle[j] = true;
        report.matched.push((main[i], oracle[j]));
        report.max_distance = report.max_distance.max(dist);
    }
    report.matched.sort_by(|x, y| x.0.total_cmp(&y.0));
    report.unmatched_main = main.iter().zip(&used_main).filter(|(_, u)| !**u).map(|(v, _)| *v).collect();
    report.unmatched_oracle = oracle.iter().zip(&used_oracle).filter(|(_, u)| !**u).map(|(v, _)| *v).collect();
    report
}
