//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use common::*;
use multipoint::verify::{smooth_inner, smooth_outer};
use multipoint_core::boundary_triplet::{construct_witness, green_defect, outer_gamma, Triplet};
use multipoint_core::linalg::{HermitianMatrix, UnitaryMatrix};
use multipoint_core::model::{
    l2_norm, make_grid, GridFunction, IntervalConfig, IntervalId, ProblemDefinition, ToleranceConfig, TripleFunction,
};
use multipoint_core::oracle::{compare_spectra, det_sweep_eigenvalues, SweepConfig};
use multipoint_core::resolvent::{apply_resolvent, resolvent_norm_probe};
use multipoint_core::spectrum::{outer_norm_constancy, point_spectrum};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1_closed_form_vs_sweep() -> Outcome {
    let start = Instant::now();
    let mut r = rng(101);
    let window = (-15.0, 15.0);
    let (mut unmatched, mut worst, mut total) = (0usize, 0.0f64, 0usize);
    for _ in 0..25 {
        let d = r.gen_range(1..=4);
        let delta = r.gen_range(0.5..=3.0);
        let p = random_problem(&mut r, d, 5.0, delta);
        let report = point_spectrum(&p, window).unwrap();
        let cfg = SweepConfig::with(window, SweepConfig::DEFAULT_SAMPLES, 2048, SweepConfig::DEFAULT_REFINE_TOL).unwrap();
        let sweep = det_sweep_eigenvalues(&p, &cfg).unwrap();
        let m = compare_spectra(&report, &sweep.roots, 1e-6);
        unmatched += m.unmatched_main.len() + m.unmatched_oracle.len();
        worst = worst.max(m.max_distance);
        total += report.entries.len();
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        unmatched == 0 && secs <= 20.0,
        format!("{total} eigenvalues, {unmatched} unmatched, max distance {worst:.1e}, {secs:.1} s"),
    )
}

fn scalar_problem() -> ProblemDefinition {
    let z = HermitianMatrix::zeros(1);
    let iv = IntervalConfig::new(-1.0, 0.0, 1.0, 2.0).unwrap();
    let (w1, w2) = (UnitaryMatrix::identity(1), UnitaryMatrix::identity(1));
    ProblemDefinition::new(iv, z.clone(), z.clone(), z, w1, w2, ToleranceConfig::default()).unwrap()
}

fn criterion_2_scalar_law() -> Outcome {
    let window = (-20.0, 20.0);
    let got = point_spectrum(&scalar_problem(), window).unwrap().lambdas();
    let expected: Vec<f64> = (-3..=3).map(|n| TAU * n as f64).collect();
    let err = got.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    outcome(got.len() == expected.len() && err <= 1e-12, format!("{} eigenvalues, max error {err:.1e}", got.len()))
}

fn criterion_3_residuals() -> Outcome {
    let mut r = rng(303);
    let (mut ode, mut bc, mut count) = (0.0f64, 0.0f64, 0usize);
    for k in 0..10 {
        let delta = r.gen_range(0.5..=3.0);
        let p = random_problem(&mut r, 1 + k % 4, 5.0, delta);
        assert_eq!(p.intervals().n_inner(), 801);
        for e in point_spectrum(&p, (-15.0, 15.0)).unwrap().entries {
            ode = ode.max(e.ode_residual);
            bc = bc.max(e.bc_residual);
            count += 1;
        }
    }
    outcome(ode <= 1e-6 && bc <= 1e-9, format!("{count} entries, ode {ode:.1e}, bc {bc:.1e}"))
}

fn criterion_4_norm_constancy() -> Outcome {
    let mut r = rng(404);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let d = r.gen_range(1..=4);
        let p = random_problem(&mut r, d, 5.0, 1.0);
        let lambda = r.gen_range(-20.0..20.0);
        let f = rvec(&mut r, d);
        worst = worst.max(outer_norm_constancy(&p, c(lambda, 0.0), &f).unwrap());
    }
    outcome(worst <= 1e-10, format!("max deviation {worst:.1e}"))
}

/// Gaussian bumps with random amplitudes, one per interval.
fn smooth_rhs(r: &mut rand_chacha::ChaCha8Rng, p: &ProblemDefinition) -> TripleFunction {
    let iv = *p.intervals();
    let centres = [iv.a1() - 4.0, 0.5 * (iv.a2() + iv.b2()), iv.a3() + 4.0];
    let widths = [1.5, 0.25 * iv.inner_length(), 1.5];
    let parts: Vec<GridFunction> = IntervalId::ALL
        .iter()
        .enumerate()
        .map(|(k, &id)| {
            let amp = rvec(r, p.dim());
            make_grid(id, p).like(|_, t, out| {
                let g = (-((t - centres[k]) / widths[k]).powi(2)).exp();
                for (o, a) in out.iter_mut().zip(&amp) {
                    *o = a * g;
                }
            })
        })
        .collect();
    let mut it = parts.into_iter();
    TripleFunction::new(it.next(), it.next(), it.next()).unwrap()
}

fn criterion_5_resolvent_identity() -> Outcome {
    let mut r = rng(505);
    let lambdas = [c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.5), c(1.0, -0.5)];
    let (mut ode, mut bc, mut identity) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10 {
        let d = r.gen_range(1..=4);
        let delta = r.gen_range(0.5..=3.0);
        let p = random_problem(&mut r, d, 2.0, delta);
        let f = smooth_rhs(&mut r, &p);
        let sols: Vec<_> = lambdas.iter().map(|&l| apply_resolvent(&p, l, &f).unwrap()).collect();
        for s in &sols {
            ode = ode.max(s.residual_ode);
            bc = bc.max(s.residual_bc);
        }
        // R_l f - R_m f = (l - m) R_l R_m f, relative to ||f||.
        for (a, b) in [(0, 2), (1, 3), (0, 1)] {
            let (la, lb) = (lambdas[a], lambdas[b]);
            let rarb = apply_resolvent(&p, la, &sols[b].u).unwrap().u;
            let mut defect = sols[a].u.clone();
            defect.axpy(c(-1.0, 0.0), &sols[b].u).unwrap();
            defect.axpy(-(la - lb), &rarb).unwrap();
            identity = identity.max(l2_norm(&defect) / l2_norm(&f));
        }
    }
    outcome(
        ode <= 1e-4 && bc <= 1e-9 && identity <= 1e-3,
        format!("ode {ode:.1e}, bc {bc:.1e}, resolvent identity {identity:.1e}"),
    )
}

fn criterion_6_norm_probe() -> Outcome {
    let mut r = rng(606);
    let p = random_problem(&mut r, 3, 5.0, 1.0);
    let f3 = rvec(&mut r, 3);
    let (mut rel, mut spread) = (0.0f64, 0.0f64);
    for li in [1.0, 0.5, 0.1] {
        let exact = 0.5 / li;
        let ratios: Vec<f64> = [0.0, 3.0, -7.0].iter().map(|&lr| resolvent_norm_probe(&p, li, lr, &f3).unwrap()).collect();
        for &q in &ratios {
            rel = rel.max((q - exact).abs() / exact);
            spread = spread.max((q - ratios[0]).abs());
        }
    }
    outcome(rel <= 1e-3 && spread <= 1e-6, format!("relative error {rel:.1e}, spread over lambda_r {spread:.1e}"))
}

fn criterion_7_boundary_triplets() -> Outcome {
    let mut r = rng(707);
    let mut round_trip = 0.0f64;
    for _ in 0..100 {
        let d = r.gen_range(1..=4);
        let p = random_problem(&mut r, d, 5.0, 1.0);
        let (f, g) = (rvec(&mut r, d), rvec(&mut r, d));
        let pair = outer_gamma(&construct_witness(&f, &g, &p).unwrap()).unwrap();
        for k in 0..d {
            round_trip = round_trip.max((pair.first[k] - f[k]).norm()).max((pair.second[k] - g[k]).norm());
        }
    }
    let (mut outer, mut inner) = (0.0f64, 0.0f64);
    for _ in 0..3 {
        let d = r.gen_range(1..=3);
        let coarse = random_problem(&mut r, d, 2.0, 1.0);
        let iv = *coarse.intervals();
        let p = coarse.with_intervals(iv.regridded(30.0, 12001, 2001).unwrap());
        let (u, v) = (smooth_outer(&mut r, &p), smooth_outer(&mut r, &p));
        outer = outer.max(green_defect(&u, &v, &p, Triplet::Outer).unwrap());
        let (u, v) = (smooth_inner(&mut r, &p), smooth_inner(&mut r, &p));
        inner = inner.max(green_defect(&u, &v, &p, Triplet::Inner).unwrap());
    }
    outcome(
        round_trip <= 1e-12 && outer <= 1e-5 && inner <= 1e-6,
        format!("round trip {round_trip:.1e}, outer defect {outer:.1e}, inner defect {inner:.1e}"),
    )
}

fn criterion_8_example_pde() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("example.json");
    let run = multipoint(&["example-pde", "--modes", "4", "--psi", "0.4", "--window", "0", "50", "--out", path_str(&out)]);
    if !run.status.success() {
        return outcome(false, format!("exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr)));
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let mut got: Vec<f64> = report["entries"].as_array().unwrap().iter().map(|e| e["lambda"].as_f64().unwrap()).collect();
    got.sort_by(f64::total_cmp);
    let mut expected = Vec::new();
    for n in 0..4 {
        let base = ((n as f64 * PI).powi(2) - 0.4).rem_euclid(TAU);
        let mut k = 0;
        while base + TAU * k as f64 <= 50.0 {
            expected.push(base + TAU * k as f64);
            k += 1;
        }
    }
    expected.sort_by(f64::total_cmp);
    let err = got.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    outcome(
        got.len() == expected.len() && err <= 1e-9,
        format!("{} eigenvalues (expected {}), max error {err:.1e}", got.len(), expected.len()),
    )
}

fn criterion_9_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("problem.json");
    let p = random_problem(&mut rng(909), 2, 3.0, 1.3);
    std::fs::write(&problem, multipoint::problem_to_json(&p)).unwrap();
    let sample = dir.path().join("f2.json");
    let g = make_grid(IntervalId::Inner, &p).like(|_, t, o| {
        o[0] = c(t.cos(), t);
        o[1] = c(1.0, -t * t);
    });
    std::fs::write(&sample, multipoint::json::to_string(&multipoint::samples::SampleFile::new(&g))).unwrap();
    let (pp, ss) = (path_str(&problem), path_str(&sample));
    let runs: Vec<Vec<&str>> = vec![
        vec!["spectrum", "--problem", pp, "--window", "-10", "10", "--norm-probe", "1,0.5"],
        vec!["resolvent", "--problem", pp, "--lambda", "0.5", "-1", "--f", ss],
        vec!["verify", "--problem", pp, "--seed", "3"],
        vec!["oracle-compare", "--problem", pp, "--window", "-10", "10", "--tol", "1e-6"],
        vec!["example-pde", "--modes", "3", "--psi", "0.4", "--phi", "1.0"],
    ];
    let mut failures = Vec::new();
    for args in &runs {
        let (a, b) = (multipoint(args), multipoint(args));
        let ok = a.status.success() && a.status == b.status && a.stdout == b.stdout && !a.stdout.is_empty();
        if !ok {
            failures.push(args[0]);
        }
    }
    // CSV export as well.
    let csv = |name: &str| {
        let path = dir.path().join(name);
        multipoint(&["spectrum", "--problem", pp, "--window", "-10", "10", "--csv", path_str(&path), "--out", path_str(&dir.path().join("x.json"))]);
        std::fs::read(path).unwrap_or_default()
    };
    let (c1, c2) = (csv("a.csv"), csv("b.csv"));
    if c1.is_empty() || c1 != c2 {
        failures.push("spectrum --csv");
    }
    outcome(failures.is_empty(), format!("{} subcommands, differing: {failures:?}", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("closed-form spectrum matches determinant sweep", criterion_1_closed_form_vs_sweep),
        ("scalar law 2πn", criterion_2_scalar_law),
        ("eigenpair residuals", criterion_3_residuals),
        ("outer norm constancy", criterion_4_norm_constancy),
        ("resolvent defining and first identities", criterion_5_resolvent_identity),
        ("resolvent norm probe 1/(2 Im λ)", criterion_6_norm_probe),
        ("witness round trip and Green identities", criterion_7_boundary_triplets),
        ("example-pde per-mode closed form", criterion_8_example_pde),
        ("byte-identical reruns", criterion_9_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} {name}: {}", k + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
