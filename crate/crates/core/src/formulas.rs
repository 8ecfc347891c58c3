//! Closed-form eigenstates of small chains, checked against the numerical spectrum.
//!
//! Each formula is a linear combination whose coefficients depend on the
//! energy `E` (and on `γ`, `λ`). It is evaluated at every computed
//! eigenvalue of its block and accepted when `‖(H - E)v‖ / ‖v‖ < 1e-8`.
//! Degenerate eigenvalues need no special handling: any vector of the
//! eigenspace passes the residual test.
//!
//! Several formulas only hold for `γ = 3`; those are skipped for other
//! couplings. The `λ = 0` sector formulas of the two-site chain are only
//! evaluated at `λ = 0`.

use std::f64::consts::SQRT_2;
use std::sync::Arc;

use nalgebra::DVector;
use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::fock::{FockBasis, OccupationVector};
use crate::momentum::{self, MomentumBlock, MomentumState};
use crate::ops::{self, LinearOperator};
use crate::spectra::{self, SolvedBlock};
use crate::C64;

pub const RESIDUAL_TOL: f64 = 1e-8;
const VANISHING: f64 = 1e-9;
const ENERGY_TOL: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The formula's vector is zero at this energy, so it says nothing.
    Vanishes,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub f: usize,
    pub nu: i32,
    pub gamma: f64,
    pub lambda: f64,
    pub energy: f64,
    pub residual: f64,
    pub status: CheckStatus,
    pub note: Option<String>,
}

impl FormulaCheck {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone)]
enum Component {
    Momentum(MomentumState),
    Occupation(Vec<u32>),
}

type Coefficients = Vec<(Component, C64)>;
type CoefficientFn = Box<dyn Fn(f64, f64, f64) -> Coefficients + Send + Sync>;

#[derive(Debug, Clone, Copy)]
enum EnergyFilter {
    All,
    Near(f64),
    AwayFrom(f64),
}

impl EnergyFilter {
    fn admits(&self, e: f64) -> bool {
        match *self {
            EnergyFilter::All => true,
            EnergyFilter::Near(x) => (e - x).abs() < MATCH_TOL,
            EnergyFilter::AwayFrom(x) => (e - x).abs() >= MATCH_TOL,
        }
    }
}

enum Energies {
    /// Every eigenvalue of the block (subject to the filter).
    Block(EnergyFilter),
    /// Energies given in closed form.
    Closed(fn(f64, f64) -> Vec<f64>),
}

struct Formula {
    name: &'static str,
    f: usize,
    nu: i32,
    only_gamma3: bool,
    only_lambda0: bool,
    energies: Energies,
    coeffs: CoefficientFn,
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn psi1() -> Component {
    Component::Momentum(MomentumState::OneQuantum)
}

fn psi2(b: usize) -> Component {
    Component::Momentum(MomentumState::TwoQuanta { b })
}

fn vac() -> Component {
    Component::Momentum(MomentumState::Vacuum)
}

fn occ(v: &[u32]) -> Component {
    Component::Occupation(v.to_vec())
}

/// Readings of the unbalanced `c_4 = √2(E³+(γ+2)E²+(2γ-10λ²)E-8λ²γ`.
pub fn c4_readings(e: f64, g: f64, l: f64) -> [(&'static str, f64); 3] {
    let l2 = l * l;
    [
        (
            "closed at end",
            SQRT_2 * (e.powi(3) + (g + 2.0) * e * e + (2.0 * g - 10.0 * l2) * e - 8.0 * l2 * g),
        ),
        (
            "closed before -8λ²γ",
            SQRT_2 * (e.powi(3) + (g + 2.0) * e * e + (2.0 * g - 10.0 * l2) * e) - 8.0 * l2 * g,
        ),
        (
            "closed after (γ+2)E²",
            SQRT_2 * (e.powi(3) + (g + 2.0) * e * e) + (2.0 * g - 10.0 * l2) * e - 8.0 * l2 * g,
        ),
    ]
}

/// Printed `c_1 … c_3` of the two-site, zero-momentum eigenstates.
pub fn printed_c123(e: f64, g: f64, l: f64) -> [f64; 3] {
    let l2 = l * l;
    [
        4.0 * SQRT_2 * (e + g - 4.0) * l2,
        -SQRT_2 * e * (e + g - 4.0) * l,
        -(4.0 * e * e + (8.0 - 2.0 * l2) * e - 32.0),
    ]
}

fn eq44(c: [f64; 3], c4: f64) -> Coefficients {
    vec![
        (occ(&[0, 0]), re(c[0])),
        (occ(&[1, 0]), re(c[1])),
        (occ(&[0, 1]), re(c[1])),
        (occ(&[2, 0]), re(c[2])),
        (occ(&[0, 2]), re(c[2])),
        (occ(&[1, 1]), re(c4)),
    ]
}

fn catalog() -> Vec<Formula> {
    let mut out = vec![
        Formula {
            name: "f1 eigenstates",
            f: 1,
            nu: 0,
            only_gamma3: false,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(|e, _g, l| {
                vec![
                    (occ(&[0]), re(2.0 * SQRT_2 * l * l)),
                    (occ(&[1]), re(-SQRT_2 * l * e)),
                    (occ(&[2]), re(e * e + 2.0 * e - 4.0 * l * l)),
                ]
            }),
        },
        Formula {
            name: "f2 lambda=0 one-quantum states",
            f: 2,
            nu: 0,
            only_gamma3: false,
            only_lambda0: true,
            energies: Energies::Closed(|_, _| vec![-2.0]),
            coeffs: Box::new(|_, _, _| vec![(occ(&[1, 0]), re(1.0)), (occ(&[0, 1]), re(1.0))]),
        },
        Formula {
            name: "f2 lambda=0 one-quantum states",
            f: 2,
            nu: 1,
            only_gamma3: false,
            only_lambda0: true,
            energies: Energies::Closed(|_, _| vec![2.0]),
            coeffs: Box::new(|_, _, _| vec![(occ(&[1, 0]), re(1.0)), (occ(&[0, 1]), re(-1.0))]),
        },
        Formula {
            name: "f2 lambda=0 antisymmetric pair",
            f: 2,
            nu: 1,
            only_gamma3: false,
            only_lambda0: true,
            energies: Energies::Closed(|g, _| vec![-g]),
            coeffs: Box::new(|_, _, _| vec![(occ(&[2, 0]), re(1.0)), (occ(&[0, 2]), re(-1.0))]),
        },
        Formula {
            name: "f2 lambda=0 symmetric pair",
            f: 2,
            nu: 0,
            only_gamma3: false,
            only_lambda0: true,
            energies: Energies::Closed(|g, _| {
                let r = 0.5 * (g * g + 64.0).sqrt();
                vec![-g / 2.0 - r, -g / 2.0 + r]
            }),
            coeffs: Box::new(|e, g, _| {
                vec![
                    (occ(&[2, 0]), re(1.0)),
                    (occ(&[0, 2]), re(1.0)),
                    (occ(&[1, 1]), re(-(e + g) / (2.0 * SQRT_2))),
                ]
            }),
        },
        Formula {
            name: "f2 antisymmetric mixed states (occupation form)",
            f: 2,
            nu: 1,
            only_gamma3: false,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(|e, _g, l| {
                vec![
                    (occ(&[1, 0]), re(l * SQRT_2)),
                    (occ(&[0, 1]), re(-l * SQRT_2)),
                    (occ(&[2, 0]), re(2.0 - e)),
                    (occ(&[0, 2]), re(e - 2.0)),
                ]
            }),
        },
        Formula {
            name: "f2 antisymmetric mixed states (closed-form energies)",
            f: 2,
            nu: 1,
            only_gamma3: false,
            only_lambda0: false,
            energies: Energies::Closed(|g, l| {
                let r = 0.5 * ((g + 2.0).powi(2) + 8.0 * l * l).sqrt();
                vec![1.0 - g / 2.0 - r, 1.0 - g / 2.0 + r]
            }),
            coeffs: Box::new(|e, _g, l| {
                vec![
                    (occ(&[1, 0]), re(l * SQRT_2)),
                    (occ(&[0, 1]), re(-l * SQRT_2)),
                    (occ(&[2, 0]), re(2.0 - e)),
                    (occ(&[0, 2]), re(e - 2.0)),
                ]
            }),
        },
        Formula {
            name: "f2 nu=1 eigenstates",
            f: 2,
            nu: 1,
            only_gamma3: false,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(|e, _g, l| vec![(psi1(), re(SQRT_2 * l)), (psi2(1), re(2.0 - e))]),
        },
        Formula {
            name: "f2 nu=0 eigenstates",
            f: 2,
            nu: 0,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(|e, _g, l| {
                let l2 = l * l;
                vec![
                    (vac(), re(4.0 * (e - 1.0) * l2)),
                    (psi1(), re(-SQRT_2 * e * (e - 1.0) * l)),
                    (psi2(1), re(-(4.0 * e * e + (8.0 - 2.0 * l2) * e - 32.0 * l2))),
                    (psi2(2), re(e.powi(3) + 5.0 * e * e + (6.0 - 10.0 * l2) * e - 24.0 * l2)),
                ]
            }),
        },
        Formula {
            name: "f3 nu=0 eigenstates",
            f: 3,
            nu: 0,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(|e, _g, l| {
                let l2 = l * l;
                vec![
                    (vac(), re(4.0 * 6f64.sqrt() * (e + 1.0) * l2)),
                    (psi1(), re(-2.0 * SQRT_2 * e * (e + 1.0) * l)),
                    (psi2(1), re(-4.0 * e * e + (4.0 * l2 - 8.0) * e + 48.0 * l2)),
                    (
                        psi2(2),
                        re(SQRT_2 * (e.powi(3) + 5.0 * e * e + (6.0 - 14.0 * l2) * e - 36.0 * l2)),
                    ),
                ]
            }),
        },
        Formula {
            name: "f4 nu=0 eigenstates",
            f: 4,
            nu: 0,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(|e, _g, l| {
                let l2 = l * l;
                vec![
                    (vac(), re(4.0 * SQRT_2 * (e - 4.0) * (e + 3.0) * l2)),
                    (psi1(), re(-SQRT_2 * e * (e - 4.0) * (e + 3.0) * l)),
                    (
                        psi2(1),
                        re(-8.0 * e * (e + 2.0) - 2.0 * (-64.0 + e * (e - 8.0)) * l2),
                    ),
                    (
                        psi2(2),
                        re(2.0 * SQRT_2 * (e + 3.0) * (-e * (e + 2.0) + (e + 16.0) * l2)),
                    ),
                    (
                        psi2(3),
                        re(128.0 * l2 + e * (e + 2.0) * (-8.0 + e * (e + 3.0) - 22.0 * l2)),
                    ),
                ]
            }),
        },
        Formula {
            name: "f4 nu=2 null state",
            f: 4,
            nu: 2,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::Near(0.0)),
            coeffs: Box::new(|_, _, _| vec![(psi2(2), re(1.0))]),
        },
        Formula {
            name: "f4 nu=2 eigenstates",
            f: 4,
            nu: 2,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::AwayFrom(0.0)),
            coeffs: Box::new(|e, _g, l| {
                vec![
                    (psi1(), re(SQRT_2 * (e + 3.0) * l)),
                    (psi2(1), re(-2.0 * l * l)),
                    (psi2(3), re(-(e * e + e - 2.0 * l * l - 6.0))),
                ]
            }),
        },
    ];
    // ±ν pairs: the upper sign goes with the positive momentum
    for sign in [1.0f64, -1.0] {
        let nu = sign as i32;
        out.push(Formula {
            name: "f3 nu=+-1 E=1 state",
            f: 3,
            nu,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::Near(1.0)),
            coeffs: Box::new(move |_e, _g, l| {
                vec![
                    (psi1(), re(1.0)),
                    (psi2(1), re(-l / SQRT_2)),
                    (psi2(2), C64::new(1.0, sign * 3f64.sqrt()) * (l / 2.0)),
                ]
            }),
        });
        out.push(Formula {
            name: "f3 nu=+-1 eigenstates",
            f: 3,
            nu,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::AwayFrom(1.0)),
            coeffs: Box::new(move |e, _g, l| {
                let w = C64::new(1.0, -sign * 3f64.sqrt());
                vec![
                    (psi1(), w * (-3.0 * l)),
                    (psi2(1), w * (SQRT_2 * (e - 2.0))),
                    (psi2(2), re(2.0 * (e + 1.0))),
                ]
            }),
        });
        out.push(Formula {
            name: "f4 nu=+-1 eigenstates",
            f: 4,
            nu,
            only_gamma3: true,
            only_lambda0: false,
            energies: Energies::Block(EnergyFilter::All),
            coeffs: Box::new(move |e, _g, l| {
                vec![
                    (psi1(), re((1.0 + e) * l)),
                    (psi2(1), re(-SQRT_2 * (l * l - e))),
                    (
                        psi2(2),
                        C64::new(1.0, sign) * (-0.5 * (e * e + 3.0 * e - 2.0 * l * l)),
                    ),
                ]
            }),
        });
    }
    out
}

struct Context {
    basis: Arc<FockBasis>,
    h: LinearOperator,
    blocks: Vec<SolvedBlock>,
}

impl Context {
    fn block(&self, nu: i32) -> &SolvedBlock {
        self.blocks
            .iter()
            .find(|b| b.label().nu() == nu)
            .expect("formula momentum exists")
    }

    fn assemble(&self, block: &MomentumBlock, coeffs: &Coefficients) -> DVector<C64> {
        let mut v = DVector::zeros(self.basis.len());
        for (component, c) in coeffs {
            match component {
                Component::Momentum(state) => {
                    let pos = block.position(*state).expect("formula component lies in its block");
                    v += &block.vectors[pos].amplitudes * *c;
                }
                Component::Occupation(o) => {
                    let key = OccupationVector::new(o.clone()).expect("non-empty occupation");
                    let pos = self
                        .basis
                        .state_index(&key)
                        .expect("formula occupation matches site count")
                        .expect("formula occupation lies in the invariant subspace");
                    v[pos] += *c;
                }
            }
        }
        v
    }

    fn relative_residual(&self, v: &DVector<C64>, e: f64) -> Option<f64> {
        let norm = v.norm();
        if norm < VANISHING {
            return None;
        }
        Some((self.h.apply(v) - v * re(e)).norm() / norm)
    }
}

/// Evaluate every applicable closed-form eigenstate for `(f, γ, λ)`.
pub fn verify_eigenvector_formulas(f: usize, gamma: f64, lambda: f64) -> Result<Vec<FormulaCheck>> {
    let basis = ops::at_most(f, 2)?;
    let h = ops::build_hamiltonian(gamma, lambda, &basis)?;
    let blocks = spectra::solve_blocks(
        momentum::assemble_blocks(&h, Execution::Sequential)?,
        Execution::Sequential,
    )?;
    let ctx = Context { basis, h, blocks };
    let is_gamma3 = (gamma - 3.0).abs() < 1e-12;
    let mut out = Vec::new();

    for formula in catalog().into_iter().filter(|fm| fm.f == f) {
        if (formula.only_gamma3 && !is_gamma3) || (formula.only_lambda0 && lambda != 0.0) {
            continue;
        }
        let solved = ctx.block(formula.nu);
        let energies: Vec<f64> = match &formula.energies {
            Energies::Block(filter) => solved
                .eigenvalues()
                .iter()
                .copied()
                .filter(|&e| filter.admits(e))
                .collect(),
            Energies::Closed(energies) => energies(gamma, lambda),
        };
        for e in energies {
            let coeffs = (formula.coeffs)(e, gamma, lambda);
            let v = ctx.assemble(&solved.block, &coeffs);
            let (residual, status) = match ctx.relative_residual(&v, e) {
                None => (0.0, CheckStatus::Vanishes),
                Some(r) if r < RESIDUAL_TOL => (r, CheckStatus::Pass),
                Some(r) => (r, CheckStatus::Fail),
            };
            let note = (status == CheckStatus::Fail)
                .then(|| diagnose(&ctx, solved, e, &coeffs))
                .flatten();
            out.push(FormulaCheck {
                name: formula.name.to_string(),
                f,
                nu: formula.nu,
                gamma,
                lambda,
                energy: e,
                residual,
                status,
                note,
            });
        }
    }

    if f == 2 {
        out.extend(two_site_coefficient_checks(&ctx, gamma, lambda));
    }
    if f == 3 && is_gamma3 {
        out.extend(closed_form_energy_checks(&ctx, gamma, lambda));
    }
    Ok(out)
}

// Closed-form roots of the f = 3 moving blocks: E = 1 and E = -1 ± √(3(2+λ²)).
fn closed_form_energy_checks(ctx: &Context, gamma: f64, lambda: f64) -> Vec<FormulaCheck> {
    let r = (3.0 * (2.0 + lambda * lambda)).sqrt();
    let mut expected = [-1.0 - r, 1.0, -1.0 + r];
    expected.sort_by(f64::total_cmp);
    [1, -1]
        .into_iter()
        .map(|nu| {
            let got = ctx.block(nu).eigenvalues();
            let residual = got
                .iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            FormulaCheck {
                name: "f3 nu=+-1 closed-form energies".into(),
                f: 3,
                nu,
                gamma,
                lambda,
                energy: f64::NAN,
                residual,
                status: if residual < ENERGY_TOL {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                note: None,
            }
        })
        .collect()
}

// Two-site zero-momentum eigenstates written with coefficients c_1 … c_4.
// The full vector is tested for every reading of c_4, then each printed
// coefficient is compared with the numerically solved eigenvector.
fn two_site_coefficient_checks(ctx: &Context, gamma: f64, lambda: f64) -> Vec<FormulaCheck> {
    let solved = ctx.block(0);
    let basis = &ctx.basis;
    let pos = |o: &[u32]| {
        basis
            .state_index(&OccupationVector::new(o.to_vec()).unwrap())
            .unwrap()
            .unwrap()
    };
    let mut out = Vec::new();
    let record = |name: &str, e: f64, residual: f64, status: CheckStatus, note: Option<String>| {
        FormulaCheck {
            name: name.into(),
            f: 2,
            nu: 0,
            gamma,
            lambda,
            energy: e,
            residual,
            status,
            note,
        }
    };
    for (level, &e) in solved.eigenvalues().iter().enumerate() {
        let printed = printed_c123(e, gamma, lambda);
        let readings = c4_readings(e, gamma, lambda);

        // whole vector, best reading of c_4
        let mut best: Option<(f64, &str)> = None;
        let mut vanished = true;
        for (reading, c4) in readings {
            let v = ctx.assemble(&solved.block, &eq44(printed, c4));
            if let Some(r) = ctx.relative_residual(&v, e) {
                vanished = false;
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, reading));
                }
            }
        }
        let (residual, status, note) = match best {
            _ if vanished => (0.0, CheckStatus::Vanishes, None),
            Some((r, reading)) if r < RESIDUAL_TOL => {
                (r, CheckStatus::Pass, Some(format!("c4 reading: {reading}")))
            }
            Some((r, reading)) => (
                r,
                CheckStatus::Fail,
                Some(format!("best c4 reading: {reading}")),
            ),
            None => unreachable!(),
        };
        out.push(record("f2 nu=0 c1..c4 eigenstates", e, residual, status, note));

        // coefficient-by-coefficient comparison against the solved eigenvector
        let v = solved.eigenvector(level);
        let solved_c = [
            v[pos(&[0, 0])],
            v[pos(&[1, 0])],
            v[pos(&[2, 0])],
            v[pos(&[1, 1])],
        ];
        let Some(anchor) = (0..2).find(|&i| printed[i].abs() > 1e-6 && solved_c[i].norm() > 1e-12)
        else {
            continue;
        };
        let scale = re(printed[anchor]) / solved_c[anchor];
        let scaled: Vec<C64> = solved_c.iter().map(|c| c * scale).collect();
        let mismatch = |target: f64, got: C64| (got - re(target)).norm() / target.abs().max(1.0);
        for (i, name) in ["c2", "c3"].iter().enumerate().map(|(i, n)| (i + 1, n)) {
            if i == anchor {
                continue;
            }
            let d = mismatch(printed[i], scaled[i]);
            let status = if d < MATCH_TOL {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            let note = (status == CheckStatus::Fail).then(|| {
                format!("printed {:.6}, solved {:.6}", printed[i], scaled[i].re)
            });
            out.push(record(&format!("f2 nu=0 printed {name}"), e, d, status, note));
        }
        let matches: Vec<&str> = readings
            .iter()
            .filter(|(_, c4)| mismatch(*c4, scaled[3]) < MATCH_TOL)
            .map(|(reading, _)| *reading)
            .collect();
        let d = readings
            .iter()
            .map(|(_, c4)| mismatch(*c4, scaled[3]))
            .fold(f64::INFINITY, f64::min);
        let status = if matches.is_empty() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
        let note = Some(if matches.is_empty() {
            format!("no reading matches solved {:.6}", scaled[3].re)
        } else {
            format!("matching readings: {}", matches.join(", "))
        });
        out.push(record("f2 nu=0 c4 readings", e, d, status, note));
    }
    out
}

// For a failed momentum-basis formula, rescale the numerical eigenvector onto
// the formula's first sizeable coefficient and name the components that disagree.
fn diagnose(ctx: &Context, solved: &SolvedBlock, e: f64, coeffs: &Coefficients) -> Option<String> {
    let level = solved
        .eigenvalues()
        .iter()
        .position(|&x| (x - e).abs() < ENERGY_TOL)?;
    let block = &solved.block;
    let coords = solved.block_eigenvector(level);
    let entries: Vec<(MomentumState, C64)> = coeffs
        .iter()
        .filter_map(|(c, v)| match c {
            Component::Momentum(s) => Some((*s, *v)),
            Component::Occupation(_) => None,
        })
        .collect();
    if entries.len() != coeffs.len() {
        return None;
    }
    let (anchor_state, anchor_value) = entries.iter().find(|(_, v)| v.norm() > 1e-6)?;
    let anchor_solved = coords[block.position(*anchor_state)?];
    if anchor_solved.norm() < 1e-12 {
        return None;
    }
    let scale = anchor_value / anchor_solved;
    let _ = ctx;
    let mut parts = Vec::new();
    for (state, printed) in &entries {
        let got = coords[block.position(*state)?] * scale;
        if (got - printed).norm() > MATCH_TOL * printed.norm().max(1.0) {
            let kind = if (got + printed).norm() < MATCH_TOL * printed.norm().max(1.0) {
                " (opposite sign)"
            } else {
                ""
            };
            parts.push(format!(
                "{state}: printed {:.6}, solved {:.6}{kind}",
                printed.re, got.re
            ));
        }
    }
    Some(parts.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failures(checks: &[FormulaCheck]) -> Vec<String> {
        checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| format!("{} E={:.4} r={:.2e}", c.name, c.energy, c.residual))
            .collect()
    }

    #[test]
    fn single_site_formula_holds_for_any_gamma() {
        for gamma in [1.0, 3.0, 7.0] {
            let checks = verify_eigenvector_formulas(1, gamma, 0.4).unwrap();
            assert_eq!(checks.len(), 3);
            assert!(failures(&checks).is_empty());
        }
    }

    #[test]
    fn two_site_momentum_pi_formula() {
        for gamma in [1.0, 3.0] {
            let checks = verify_eigenvector_formulas(2, gamma, 0.3).unwrap();
            let nu1: Vec<_> = checks.iter().filter(|c| c.name == "f2 nu=1 eigenstates").collect();
            assert_eq!(nu1.len(), 2);
            assert!(nu1.iter().all(|c| c.status == CheckStatus::Pass));
            let closed: Vec<_> = checks
                .iter()
                .filter(|c| c.name.contains("closed-form energies"))
                .collect();
            assert!(closed.iter().all(|c| c.status == CheckStatus::Pass));
        }
    }

    #[test]
    fn two_site_zero_coupling_sectors() {
        let checks = verify_eigenvector_formulas(2, 3.0, 0.0).unwrap();
        for name in [
            "f2 lambda=0 one-quantum states",
            "f2 lambda=0 antisymmetric pair",
            "f2 lambda=0 symmetric pair",
        ] {
            let found: Vec<_> = checks.iter().filter(|c| c.name == name).collect();
            assert!(!found.is_empty());
            assert!(found.iter().all(|c| c.status == CheckStatus::Pass), "{name}");
        }
    }

    #[test]
    fn c4_closed_at_end_matches() {
        let checks = verify_eigenvector_formulas(2, 3.0, 0.3).unwrap();
        let c4: Vec<_> = checks.iter().filter(|c| c.name == "f2 nu=0 c4 readings").collect();
        assert_eq!(c4.len(), 4);
        for c in c4 {
            assert_eq!(c.status, CheckStatus::Pass);
            assert!(c.note.as_deref().unwrap().contains("closed at end"));
        }
    }

    #[test]
    fn printed_c3_misses_a_lambda_squared() {
        // the printed constant term -32 disagrees with the solved eigenvector;
        // -32λ² (the γ = 3 form) agrees
        let (g, l) = (3.0, 0.3);
        let checks = verify_eigenvector_formulas(2, g, l).unwrap();
        assert!(checks
            .iter()
            .filter(|c| c.name == "f2 nu=0 printed c3")
            .all(|c| c.status == CheckStatus::Fail));
        assert!(checks
            .iter()
            .filter(|c| c.name == "f2 nu=0 printed c2")
            .all(|c| c.status == CheckStatus::Pass));
        let gamma3 = checks.iter().filter(|c| c.name == "f2 nu=0 eigenstates");
        assert!(gamma3.clone().count() == 4 && gamma3.into_iter().all(|c| c.passed()));
    }

    #[test]
    fn gamma3_formulas_for_three_and_four_sites() {
        for lambda in [0.1, 0.3, 0.5] {
            let checks = verify_eigenvector_formulas(3, 3.0, lambda).unwrap();
            assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
            let checks = verify_eigenvector_formulas(4, 3.0, lambda).unwrap();
            let bad = failures(&checks);
            // only the zero-momentum quintic eigenstates fail, on the ψ_{2,1} sign
            assert_eq!(bad.len(), 5, "{bad:?}");
            for c in checks.iter().filter(|c| !c.passed()) {
                assert_eq!(c.name, "f4 nu=0 eigenstates");
                let note = c.note.as_deref().unwrap();
                assert!(note.contains("psi2,1") && note.contains("opposite sign"), "{note}");
                assert!(!note.contains("psi2,2") && !note.contains("psi2,3"), "{note}");
            }
        }
    }

    #[test]
    fn gamma_specific_formulas_are_skipped_elsewhere() {
        let checks = verify_eigenvector_formulas(3, 1.0, 0.3).unwrap();
        assert!(checks.is_empty());
    }
}
