use qes_hubbard::reference::{TABLES, TABLE_GAMMA, TABLE_LAMBDAS, TABLE_TOL};
use qes_hubbard::verify::{run_suite, CheckRecord, VerifyConfig};
use qes_hubbard::{compute_spectrum, soliton_band, sweep, Execution, MomentumLabel, SweepResult};
use serde::Serialize;

use crate::args::{Figure2Args, RunArgs, TablesArgs, VerifyArgs};
use crate::output::{fmt_sig, json, render, round_sig, Row};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub f: usize,
    pub gamma: f64,
    pub lambda: f64,
    pub nu: i32,
    pub k: f64,
    pub level: usize,
    pub n_tag: u32,
    pub energy: f64,
}

impl Row for SpectrumRow {
    fn header() -> &'static [&'static str] {
        &["lambda", "nu", "level", "n_tag", "energy"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_sig(self.lambda),
            self.nu.to_string(),
            self.level.to_string(),
            self.n_tag.to_string(),
            fmt_sig(self.energy),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub nu: i32,
    pub level: usize,
    pub n_tag: u32,
    pub energy: f64,
}

impl Row for SweepRow {
    fn header() -> &'static [&'static str] {
        &["lambda", "nu", "level", "n_tag", "energy"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_sig(self.lambda),
            self.nu.to_string(),
            self.level.to_string(),
            self.n_tag.to_string(),
            fmt_sig(self.energy),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct Figure2Row {
    pub lambda: f64,
    pub nu: i32,
    pub level: usize,
    pub n_tag: u32,
    pub energy: f64,
    pub band: bool,
}

impl Row for Figure2Row {
    fn header() -> &'static [&'static str] {
        &["lambda", "nu", "level", "n_tag", "energy", "band"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_sig(self.lambda),
            self.nu.to_string(),
            self.level.to_string(),
            self.n_tag.to_string(),
            fmt_sig(self.energy),
            self.band.to_string(),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub table: &'static str,
    pub f: usize,
    pub nu: i32,
    pub lambda: f64,
    pub level: usize,
    pub published: f64,
    pub computed: f64,
    pub deviation: f64,
    pub pass: bool,
}

impl Row for TableRow {
    fn header() -> &'static [&'static str] {
        &["table", "f", "nu", "lambda", "level", "published", "computed", "deviation", "pass"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.table.to_string(),
            self.f.to_string(),
            self.nu.to_string(),
            fmt_sig(self.lambda),
            self.level.to_string(),
            fmt_sig(self.published),
            fmt_sig(self.computed),
            fmt_sig(self.deviation),
            self.pass.to_string(),
        ]
    }
}

/// Rows of a sweep, grid point by grid point, `ν` descending, level ascending.
fn sweep_rows(s: &SweepResult) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for (p, &lambda) in s.lambda_grid.iter().enumerate() {
        for (b, label) in s.labels.iter().enumerate() {
            for (level, &energy) in s.table[p][b].iter().enumerate() {
                rows.push(SweepRow {
                    lambda: round_sig(lambda),
                    nu: label.nu(),
                    level,
                    n_tag: s.n_tag(p, b, level),
                    energy: round_sig(energy),
                });
            }
        }
    }
    rows
}

/// Each coupling solved on its own, so quanta tags never depend on neighbours.
fn pointwise_rows(f: usize, gamma: f64, lambdas: &[f64], exec: Execution) -> Result<Vec<SweepRow>, CliError> {
    let mut rows = Vec::new();
    for &lambda in lambdas {
        rows.extend(sweep_rows(&sweep(f, gamma, &[lambda], exec)?));
    }
    Ok(rows)
}

pub fn spectrum(args: &RunArgs, exec: Execution) -> Result<String, CliError> {
    let lambdas = args.lambda.values();
    let rows = pointwise_rows(args.f, args.gamma, &lambdas, exec)?
        .into_iter()
        .map(|r| {
            Ok(SpectrumRow {
                f: args.f,
                gamma: round_sig(args.gamma),
                lambda: r.lambda,
                nu: r.nu,
                k: round_sig(MomentumLabel::new(args.f, r.nu)?.k()),
                level: r.level,
                n_tag: r.n_tag,
                energy: r.energy,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(render(&rows, args.output.format))
}

pub fn sweep_cmd(args: &RunArgs, exec: Execution) -> Result<String, CliError> {
    let s = sweep(args.f, args.gamma, &args.lambda.values(), exec)?;
    Ok(render(&sweep_rows(&s), args.output.format))
}

/// Rows plus one summary line per coupling for stderr.
pub fn figure2(args: &Figure2Args, exec: Execution) -> Result<(String, Vec<String>), CliError> {
    let lambdas = match &args.lambda {
        Some(spec) => spec.values(),
        None => vec![0.0, 0.5],
    };
    let mut summary = Vec::new();
    for &lambda in &lambdas {
        let band = soliton_band(&compute_spectrum(args.f, args.gamma, lambda, exec)?);
        summary.push(format!(
            "lambda={}: band margin {} (all momenta), {} (per momentum)",
            fmt_sig(lambda),
            fmt_sig(band.margin),
            fmt_sig(band.momentum_margin)
        ));
    }
    let rows: Vec<Figure2Row> = pointwise_rows(args.f, args.gamma, &lambdas, exec)?
        .into_iter()
        .map(|r| Figure2Row {
            band: r.level == 0,
            lambda: r.lambda,
            nu: r.nu,
            level: r.level,
            n_tag: r.n_tag,
            energy: r.energy,
        })
        .collect();
    Ok((render(&rows, args.output.format), summary))
}

pub fn verify(args: &VerifyArgs, exec: Execution) -> Result<(String, bool), CliError> {
    if args.f == 0 {
        return Err(CliError::Usage("--f must be at least 1".into()));
    }
    let config = VerifyConfig { max_f: args.f, exec };
    let records: Vec<CheckRecord> = run_suite(args.suite, &config)?;
    let ok = records.iter().all(|r| r.pass);
    Ok((json(&records), ok))
}

pub fn tables(args: &TablesArgs, exec: Execution) -> Result<(String, bool), CliError> {
    let mut rows = Vec::new();
    for table in TABLES.iter().filter(|t| args.f.is_none_or(|f| f == t.f)) {
        for (published, &lambda) in table.rows.iter().zip(&TABLE_LAMBDAS) {
            let spectrum = compute_spectrum(table.f, TABLE_GAMMA, lambda, exec)?;
            let block = spectrum.block(table.nu).expect("table momentum exists");
            for (level, (&p, &c)) in published.iter().zip(block.eigenvalues()).enumerate() {
                let deviation = (p - c).abs();
                rows.push(TableRow {
                    table: table.name,
                    f: table.f,
                    nu: table.nu,
                    lambda,
                    level,
                    published: p,
                    computed: round_sig(c),
                    deviation: round_sig(deviation),
                    pass: deviation <= TABLE_TOL,
                });
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Usage("no published table for that --f".into()));
    }
    let ok = rows.iter().all(|r| r.pass);
    Ok((render(&rows, args.output.format), ok))
}
