//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the verdict lines are always shown.
//! The process fails when a criterion that is expected to hold does not.

mod common;

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use nalgebra::DVector;
use qes_hubbard::algebra;
use qes_hubbard::formulas::{self, CheckStatus};
use qes_hubbard::momentum::{self, MomentumLabel, MomentumState};
use qes_hubbard::reference::{self, CHAR_POLYS, TABLES, TABLE_GAMMA, TABLE_LAMBDAS, TABLE_TOL};
use qes_hubbard::verify::{self, CheckRecord};
use qes_hubbard::{ops, spectra, Execution, OccupationVector, C64};

struct Outcome {
    pass: bool,
    /// A failure fully accounted for by the documented misprints.
    explained: bool,
    detail: String,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            explained: false,
            detail: detail.into(),
            diagnostics: Vec::new(),
        }
    }
}

fn table_deviation(f: usize, nu: i32, row: &[f64], lambda: f64) -> f64 {
    let result = spectra::compute_spectrum(f, TABLE_GAMMA, lambda, Execution::Sequential).unwrap();
    let mut worst = 0.0f64;
    for nu in [nu, -nu] {
        if let Some(block) = result.block(nu) {
            assert_eq!(block.eigenvalues().len(), row.len());
            for (a, b) in block.eigenvalues().iter().zip(row) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    worst
}

fn tables_for(f: usize) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut count = 0;
    for t in TABLES.iter().filter(|t| t.f == f) {
        for (row, &l) in t.rows.iter().zip(&TABLE_LAMBDAS) {
            worst = worst.max(table_deviation(t.f, t.nu, row, l));
            count += row.len();
        }
    }
    (worst, count)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (worst, count) = tables_for(1);
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= TABLE_TOL && count == 18 && elapsed < Duration::from_millis(100),
        format!("{count} values, max deviation {worst:.2e} (tol {TABLE_TOL:.1e}), {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let (worst, count) = tables_for(3);
    let mut closed = 0.0f64;
    for &l in &TABLE_LAMBDAS {
        let result = spectra::compute_spectrum(3, TABLE_GAMMA, l, Execution::Sequential).unwrap();
        let r = (3.0 * (2.0 + l * l)).sqrt();
        for nu in [1, -1] {
            let e = result.block(nu).unwrap().eigenvalues();
            for (a, b) in e.iter().zip([-1.0 - r, 1.0, -1.0 + r]) {
                closed = closed.max((a - b).abs());
            }
        }
    }
    Outcome::new(
        worst <= TABLE_TOL && closed < 1e-9 && count == 42,
        format!("{count} table values, max deviation {worst:.2e}; closed-form roots max error {closed:.2e} (tol 1e-9)"),
    )
}

fn criterion_3() -> Outcome {
    let (w2, c2) = tables_for(2);
    let (w4, c4) = tables_for(4);
    let mut null = 0.0f64;
    let basis = ops::at_most(4, 2).unwrap();
    let label = MomentumLabel::new(4, 2).unwrap();
    for &l in &TABLE_LAMBDAS {
        let h = ops::build_hamiltonian(TABLE_GAMMA, l, &basis).unwrap();
        let v = momentum::build_momentum_vectors(&basis, label)
            .unwrap()
            .into_iter()
            .find(|v| v.state == MomentumState::TwoQuanta { b: 2 })
            .unwrap();
        null = null.max(h.apply(&v.amplitudes).norm());
    }
    let worst = w2.max(w4);
    Outcome::new(
        worst <= TABLE_TOL && null < 1e-9,
        format!(
            "{} values over 5 tables, max deviation {worst:.2e}; psi2,2(pi) residual {null:.2e} (tol 1e-9)",
            c2 + c4
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for cp in &CHAR_POLYS {
        for &g in &[1.0, 3.0, 7.0] {
            for &l in &[0.0, 0.3, 1.0] {
                let blocks = momentum::assemble_h_r(cp.f, g, l, Execution::Sequential).unwrap();
                let block = blocks.iter().find(|b| b.label.nu() == cp.nu).unwrap();
                let computed = spectra::char_poly(block).unwrap();
                worst = worst.max(reference::coefficient_mismatch(&(cp.coefficients)(g, l), &computed));
            }
        }
    }
    Outcome::new(
        worst < 1e-8,
        format!("{} polynomials x 9 samples, max relative coefficient error {worst:.2e} (tol 1e-8)", CHAR_POLYS.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for f in 1..=12usize {
        let blocks = momentum::assemble_h_r(f, 3.0, 0.3, Execution::default()).unwrap();
        let mut dims: Vec<usize> = blocks.iter().map(|b| b.dim()).collect();
        let total: usize = dims.iter().sum();
        let mut expected = if f % 2 == 1 {
            let mut v = vec![(f + 5) / 2];
            v.extend(std::iter::repeat_n((f + 3) / 2, f - 1));
            v
        } else {
            let mut v = vec![(f + 6) / 2];
            v.extend(std::iter::repeat_n((f + 2) / 2, f / 2));
            v.extend(std::iter::repeat_n((f + 4) / 2, (f - 2) / 2));
            v
        };
        dims.sort();
        expected.sort();
        if dims != expected || total != (f + 1) * (f + 2) / 2 {
            bad.push(f);
        }
    }
    Outcome::new(bad.is_empty(), format!("f = 1..12, mismatches: {bad:?}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for f in 1..=7 {
        for g in [1.0, 3.0] {
            for l in [0.0, 0.25, 0.5] {
                let h = common::hamiltonian(f, g, l);
                let zero = vec![vec![0.0; h.len()]; h.len()];
                let brute = common::hermitian_eigenvalues(&h, &zero);
                let mut blocks = spectra::compute_spectrum(f, g, l, Execution::default())
                    .unwrap()
                    .all_eigenvalues();
                blocks.sort_by(f64::total_cmp);
                if blocks.len() != brute.len() {
                    worst = f64::INFINITY;
                    continue;
                }
                for (a, b) in blocks.iter().zip(&brute) {
                    worst = worst.max((a - b).abs());
                }
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst < 1e-9 && elapsed < Duration::from_secs(10),
        format!("{cases} cases, max deviation {worst:.2e} (tol 1e-9), {elapsed:.2?}"),
    )
}

fn criterion_7() -> Outcome {
    let mut exact = 0.0f64;
    let mut weakest = f64::INFINITY;
    let mut leak = 0.0f64;
    for f in 1..=6 {
        let basis = ops::at_most(f, 2).unwrap();
        let n = ops::build_number(&basis);
        let t = ops::build_translation(&basis);
        let h_bh = ops::build_h_bh(3.0, &basis);
        exact = exact.max(ops::commutator(&h_bh, &n).unwrap().max_abs());
        for l in [0.25, 0.5] {
            let h = ops::build_hamiltonian(3.0, l, &basis).unwrap();
            exact = exact.max(ops::commutator(&h, &t).unwrap().max_abs());
            weakest = weakest.min(ops::commutator(&h, &n).unwrap().norm() / (0.1 * l));
        }
        let big = ops::at_most(f, 3).unwrap();
        let h3 = ops::build_hamiltonian(3.0, 0.5, &big).unwrap();
        let low: Vec<usize> = (0..=2).flat_map(|k| big.sector_positions(k)).collect();
        let rows = big.sector_positions(3);
        leak = leak.max(h3.restrict(&rows, &low).iter().fold(0.0f64, |a, z| a.max(z.norm())));
    }
    Outcome::new(
        exact < 1e-12 && weakest > 1.0 && leak < 1e-12,
        format!(
            "f <= 6: max |[H_BH,N]|,|[H,T]| = {exact:.1e}; min ||[H,N]||/(0.1 lambda) = {weakest:.2}; max <V3|H|V<=2> = {leak:.1e}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut margin = f64::INFINITY;
    let mut momentum_margin = f64::INFINITY;
    let mut values = 0.0f64;
    let mut vectors = 0.0f64;
    let mut overlapping = Vec::new();
    let mut diagnostics = Vec::new();
    for f in [3usize, 5, 7] {
        for &l in &TABLE_LAMBDAS {
            let result = spectra::compute_spectrum(f, 3.0, l, Execution::default()).unwrap();
            let band = spectra::soliton_band(&result);
            margin = margin.min(band.margin);
            momentum_margin = momentum_margin.min(band.momentum_margin);
            if !band.is_separated() {
                overlapping.push((f, l));
                let (top_nu, top) = band
                    .minima
                    .iter()
                    .copied()
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                let (low_nu, low) = result
                    .blocks
                    .iter()
                    .filter_map(|b| b.eigenvalues().get(1).map(|&e| (b.label().nu(), e)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                diagnostics.push(format!(
                    "f={f} lambda={l}: band top {top:.4} at nu={top_nu}, lowest non-band {low:.4} at nu={low_nu}, margin {:.4}",
                    band.margin
                ));
            }
            let (v, w) = verify::conjugate_pair_deviation(&result);
            values = values.max(v);
            vectors = vectors.max(w);
        }
    }
    let degeneracy = values < 1e-9 && vectors < 1e-8;
    diagnostics.push(format!(
        "per-momentum separation (band below the rest of its own block): smallest gap {momentum_margin:.4}"
    ));
    let mut out = Outcome::new(
        margin > 0.0 && degeneracy,
        format!("smallest band margin {margin:.4}, non-positive at {overlapping:?}; nu/-nu eigenvalue gap {values:.1e} (tol 1e-9); conjugate eigenvector residual {vectors:.1e} (tol 1e-8)"),
    );
    out.explained = degeneracy
        && momentum_margin > 0.0
        && overlapping.iter().all(|&(f, _)| f == 7)
        && overlapping.len() == TABLE_LAMBDAS.len();
    out.diagnostics = diagnostics;
    out
}

fn criterion_9() -> Outcome {
    let mut records: Vec<CheckRecord> = Vec::new();
    for n in 0..=4 {
        records.extend(algebra::verify_sl2(n, 2).unwrap());
    }
    for f in 2..=4 {
        records.extend(algebra::verify_grading_closure(f, 2).unwrap());
    }
    for f in 1..=4 {
        records.extend(algebra::verify_osp_structure(f).unwrap());
    }
    let translation = algebra::verify_translation_f3().unwrap();
    records.push(translation[0].clone());
    let failed: Vec<String> = records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {:?}", r.check, r.params))
        .collect();
    let worst = records
        .iter()
        .filter(|r| r.check.contains(" = ") || r.check.contains("span") || r.check.contains("casimir") || r.check.contains("closure") || r.check.contains("commutes"))
        .map(|r| r.residual)
        .fold(0.0, f64::max);
    let mut out = Outcome::new(
        failed.is_empty(),
        format!("{} relations, max residual {worst:.1e} (tol 1e-10), failures {failed:?}", records.len()),
    );
    out.diagnostics.extend(translation[1..].iter().map(|r| {
        format!("{}: {:.3} ({})", r.check, r.residual, r.note.as_deref().unwrap_or(""))
    }));
    out
}

fn occupation_vector(f: usize, entries: &[(&[u32], f64)]) -> DVector<C64> {
    let basis = ops::at_most(f, 2).unwrap();
    let mut v = DVector::zeros(basis.len());
    for (occ, c) in entries {
        let pos = basis
            .state_index(&OccupationVector::new(occ.to_vec()).unwrap())
            .unwrap()
            .unwrap();
        v[pos] += C64::new(*c, 0.0);
    }
    v
}

fn relative_residual(h: &qes_hubbard::LinearOperator, v: &DVector<C64>, e: f64) -> f64 {
    (h.apply(v) - v * C64::new(e, 0.0)).norm() / v.norm()
}

// The misprints located by the formula checks, with the one-symbol repairs.
fn corrected_variants() -> Vec<String> {
    let mut lines = Vec::new();
    let (g, l) = (3.0, 0.3);
    let l2 = l * l;
    let result = spectra::compute_spectrum(2, g, l, Execution::Sequential).unwrap();
    let basis = ops::at_most(2, 2).unwrap();
    let h = ops::build_hamiltonian(g, l, &basis).unwrap();
    let mut worst = 0.0f64;
    for &e in result.block(0).unwrap().eigenvalues() {
        let c1 = 4.0 * SQRT_2 * (e + g - 4.0) * l2;
        let c2 = -SQRT_2 * e * (e + g - 4.0) * l;
        let c3 = -(4.0 * e * e + (8.0 - 2.0 * l2) * e - 32.0 * l2);
        let c4 = SQRT_2 * (e.powi(3) + (g + 2.0) * e * e + (2.0 * g - 10.0 * l2) * e - 8.0 * l2 * g);
        let v = occupation_vector(
            2,
            &[(&[0, 0], c1), (&[1, 0], c2), (&[0, 1], c2), (&[2, 0], c3), (&[0, 2], c3), (&[1, 1], c4)],
        );
        worst = worst.max(relative_residual(&h, &v, e));
    }
    lines.push(format!(
        "f=2 c1..c4 eigenstates with c3 constant -32 lambda^2 instead of -32: max residual {worst:.1e}"
    ));

    let basis = ops::at_most(4, 2).unwrap();
    let h = ops::build_hamiltonian(g, l, &basis).unwrap();
    let label = MomentumLabel::new(4, 0).unwrap();
    let vs = momentum::build_momentum_vectors(&basis, label).unwrap();
    let at = |s: MomentumState| &vs.iter().find(|v| v.state == s).unwrap().amplitudes;
    let result = spectra::compute_spectrum(4, g, l, Execution::Sequential).unwrap();
    let mut worst = 0.0f64;
    for &e in result.block(0).unwrap().eigenvalues() {
        let c = [
            4.0 * SQRT_2 * (e - 4.0) * (e + 3.0) * l2,
            -SQRT_2 * e * (e - 4.0) * (e + 3.0) * l,
            // sign flipped relative to the printed coefficient
            8.0 * e * (e + 2.0) + 2.0 * (-64.0 + e * (e - 8.0)) * l2,
            2.0 * SQRT_2 * (e + 3.0) * (-e * (e + 2.0) + (e + 16.0) * l2),
            128.0 * l2 + e * (e + 2.0) * (-8.0 + e * (e + 3.0) - 22.0 * l2),
        ];
        let v = at(MomentumState::Vacuum) * C64::new(c[0], 0.0)
            + at(MomentumState::OneQuantum) * C64::new(c[1], 0.0)
            + at(MomentumState::TwoQuanta { b: 1 }) * C64::new(c[2], 0.0)
            + at(MomentumState::TwoQuanta { b: 2 }) * C64::new(c[3], 0.0)
            + at(MomentumState::TwoQuanta { b: 3 }) * C64::new(c[4], 0.0);
        worst = worst.max(relative_residual(&h, &v, e));
    }
    lines.push(format!(
        "f=4 nu=0 eigenstates with the psi2,1 coefficient negated: max residual {worst:.1e}"
    ));
    lines
}

fn criterion_10() -> Outcome {
    let mut checks = Vec::new();
    let mut cases = vec![(2usize, 3.0, 0.0), (2, 1.0, 0.0)];
    for f in 1..=4 {
        for g in [1.0, 3.0, 7.0] {
            for &l in &TABLE_LAMBDAS[1..] {
                cases.push((f, g, l));
            }
        }
    }
    for (f, g, l) in cases {
        checks.extend(formulas::verify_eigenvector_formulas(f, g, l).unwrap());
    }
    // the c4 ambiguity is settled by the readings check; the coefficient-level
    // c2/c3 comparisons are diagnostics for it
    let residual_checks: Vec<_> = checks
        .iter()
        .filter(|c| !c.name.starts_with("f2 nu=0 printed") && c.name != "f2 nu=0 c4 readings")
        .collect();
    let readings: Vec<_> = checks.iter().filter(|c| c.name == "f2 nu=0 c4 readings").collect();
    let worst_pass = residual_checks
        .iter()
        .filter(|c| c.status == CheckStatus::Pass)
        .map(|c| c.residual)
        .fold(0.0, f64::max);
    let mut failing: Vec<String> = residual_checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| c.name.clone())
        .collect();
    failing.sort();
    failing.dedup();
    let reading_ok = !readings.is_empty() && readings.iter().all(|c| c.status == CheckStatus::Pass);
    let vanished = checks.iter().filter(|c| c.status == CheckStatus::Vanishes).count();
    let failed_count = residual_checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
    let mut out = Outcome::new(
        failing.is_empty() && reading_ok,
        format!(
            "{} eigenstate evaluations, {failed_count} above 1e-8 (formulas {failing:?}), passing max residual {worst_pass:.1e}; c4 matches a reading: {reading_ok}; {vanished} vanishing",
            residual_checks.len()
        ),
    );
    out.explained = reading_ok
        && failing == ["f2 nu=0 c1..c4 eigenstates", "f4 nu=0 eigenstates"];
    let mut notes: Vec<String> = checks
        .iter()
        .filter(|c| (c.status == CheckStatus::Fail || c.name == "f2 nu=0 c4 readings") && c.note.is_some())
        .filter(|c| c.gamma == 3.0 && (c.lambda - 0.3).abs() < 1e-12)
        .map(|c| format!("{} E={:.4}: {}", c.name, c.energy, c.note.as_deref().unwrap()))
        .collect();
    notes.dedup();
    out.diagnostics = notes;
    out.diagnostics.extend(corrected_variants());
    out
}

/// Criteria that cannot hold as written; their diagnostics say why.
const EXPECTED_RED: &[usize] = &[8, 10];

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("table reproduction f=1", criterion_1),
        ("table reproduction f=3", criterion_2),
        ("table reproduction f=2 and f=4", criterion_3),
        ("characteristic polynomials", criterion_4),
        ("block structure f=1..12", criterion_5),
        ("oracle equivalence", criterion_6),
        ("symmetry suite", criterion_7),
        ("soliton band and nu/-nu degeneracy", criterion_8),
        ("algebra suite", criterion_9),
        ("eigenvector formulas", criterion_10),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    let mut expected_red = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let number = i + 1;
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {number:>2} {verdict} {name}: {}", outcome.detail);
        for d in &outcome.diagnostics {
            println!("    {d}");
        }
        if outcome.pass {
            passed += 1;
        } else if EXPECTED_RED.contains(&number) && outcome.explained {
            expected_red += 1;
        } else {
            unexpected.push(number);
        }
        if outcome.pass && EXPECTED_RED.contains(&number) {
            println!("    criterion {number} was expected to fail and now passes");
        }
    }
    println!(
        "acceptance: {passed} pass, {expected_red} known failure(s), {} unexpected failure(s) {unexpected:?}",
        unexpected.len()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
