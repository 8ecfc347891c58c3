//! Momentum block-diagonalization of `H` on `V_0 ⊕ V_1 ⊕ V_2`.
//!
//! For each discrete momentum `k = 2πν/f` the invariant subspace contributes
//! the vectors
//!
//! - `|0>` (only for `ν = 0`),
//! - `ψ_1(k) ∝ Σ_j (e^{ik} T)^{j-1} |1,0,…,0>`,
//! - `ψ_{2,b}(k) ∝ Σ_j (e^{ik} T)^{j-1} |pair with separation b-1>` for
//!   `b = 1 … ⌊f/2⌋ + 1`.
//!
//! Each raw sum is normalized by its actual norm; sums that cancel (a
//! pattern whose period is shorter than `f` combined with an incompatible
//! `ν`) are dropped. Every surviving vector satisfies `T ψ = e^{-ik} ψ`.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fock::{translate, FockBasis, OccupationVector, QuantaSelector};
use crate::linalg;
use crate::ops::{self, LinearOperator};
use crate::C64;

/// Raw momentum sums with a norm below this are treated as vanishing.
pub const VANISHING_NORM: f64 = 1e-10;

const ORTHONORMAL_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MomentumLabel {
    sites: usize,
    nu: i32,
}

impl MomentumLabel {
    pub fn new(sites: usize, nu: i32) -> Result<Self> {
        if sites == 0 {
            return Err(Error::ZeroSites);
        }
        let (lo, hi) = nu_range(sites);
        if nu < lo || nu > hi {
            return Err(Error::InvalidMomentum { nu, sites });
        }
        Ok(MomentumLabel { sites, nu })
    }

    pub fn nu(&self) -> i32 {
        self.nu
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// `k = 2πν/f`.
    pub fn k(&self) -> f64 {
        2.0 * PI * self.nu as f64 / self.sites as f64
    }

    /// Eigenvalue of `T` shared by every vector of this block.
    pub fn translation_eigenvalue(&self) -> C64 {
        C64::from_polar(1.0, -self.k())
    }

    /// The label carrying `-ν`, folded back into range (`ν = f/2` is its own partner).
    pub fn conjugate(&self) -> MomentumLabel {
        let f = self.sites as i32;
        let (lo, _) = nu_range(self.sites);
        let mut nu = -self.nu;
        if nu < lo {
            nu += f;
        }
        MomentumLabel {
            sites: self.sites,
            nu,
        }
    }
}

fn nu_range(f: usize) -> (i32, i32) {
    let f = f as i32;
    if f % 2 == 1 {
        (-(f - 1) / 2, (f - 1) / 2)
    } else {
        (-f / 2 + 1, f / 2)
    }
}

/// The `f` momentum labels, `ν` descending.
pub fn momentum_values(f: usize) -> Result<Vec<MomentumLabel>> {
    if f == 0 {
        return Err(Error::ZeroSites);
    }
    let (lo, hi) = nu_range(f);
    Ok((lo..=hi).rev().map(|nu| MomentumLabel { sites: f, nu }).collect())
}

/// Which family a momentum vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MomentumState {
    Vacuum,
    OneQuantum,
    /// Two quanta at separation `b - 1`.
    TwoQuanta { b: usize },
}

impl MomentumState {
    pub fn quanta(&self) -> u32 {
        match self {
            MomentumState::Vacuum => 0,
            MomentumState::OneQuantum => 1,
            MomentumState::TwoQuanta { .. } => 2,
        }
    }

    /// Seed occupation pattern that the momentum sum translates.
    pub fn seed(&self, f: usize) -> Option<OccupationVector> {
        let mut occ = vec![0u32; f];
        match *self {
            MomentumState::Vacuum => {}
            MomentumState::OneQuantum => occ[0] = 1,
            MomentumState::TwoQuanta { b } => {
                if b == 0 || b > f / 2 + 1 {
                    return None;
                }
                if b == 1 {
                    occ[0] = 2;
                } else {
                    occ[0] = 1;
                    occ[b - 1] += 1;
                }
            }
        }
        OccupationVector::new(occ).ok()
    }

    fn short_name(&self) -> String {
        match self {
            MomentumState::Vacuum => "0".into(),
            MomentumState::OneQuantum => "psi1".into(),
            MomentumState::TwoQuanta { b } => format!("psi2,{b}"),
        }
    }
}

impl std::fmt::Display for MomentumState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.short_name())
    }
}

/// Number of `ψ_{2,b}` families: `(f+1)/2` for odd `f`, `f/2 + 1` for even `f`.
pub fn two_quanta_families(f: usize) -> usize {
    f / 2 + 1
}

/// Unit vector over the occupation basis, tagged with its family.
#[derive(Debug, Clone)]
pub struct MomentumVector {
    pub state: MomentumState,
    pub amplitudes: DVector<C64>,
}

/// `(1/√f) Σ_j (e^{ik} T)^{j-1} |seed>` without renormalization.
///
/// The vacuum is returned as the plain `|0>` for `ν = 0` and as the zero
/// vector otherwise.
pub fn raw_momentum_vector(
    basis: &FockBasis,
    label: MomentumLabel,
    state: MomentumState,
) -> Result<DVector<C64>> {
    check_basis(basis, label)?;
    let f = basis.sites();
    let mut v = DVector::zeros(basis.len());
    let seed = match state.seed(f) {
        Some(seed) => seed,
        None => return Ok(v),
    };
    if state == MomentumState::Vacuum {
        if label.nu == 0 {
            v[basis.position(&seed).expect("vacuum present")] = C64::new(1.0, 0.0);
        }
        return Ok(v);
    }
    let k = label.k();
    let prefactor = 1.0 / (f as f64).sqrt();
    let mut current = seed;
    for step in 0..f {
        let pos = basis
            .position(&current)
            .expect("two-quanta patterns lie in the basis");
        v[pos] += C64::from_polar(prefactor, k * step as f64);
        current = translate(&current);
    }
    Ok(v)
}

fn check_basis(basis: &FockBasis, label: MomentumLabel) -> Result<()> {
    if basis.sites() != label.sites {
        return Err(Error::LengthMismatch {
            expected: label.sites,
            found: basis.sites(),
        });
    }
    match basis.selector() {
        QuantaSelector::AtMost(n) if n >= 2 => Ok(()),
        _ => Err(Error::InsufficientQuanta { required: 2 }),
    }
}

/// Every family that can contribute to a block, in block order.
pub fn candidate_states(f: usize) -> Vec<MomentumState> {
    let mut states = vec![MomentumState::Vacuum, MomentumState::OneQuantum];
    states.extend((1..=two_quanta_families(f)).map(|b| MomentumState::TwoQuanta { b }));
    states
}

/// Normalized momentum vectors of one block: `|0>` (ν = 0 only), `ψ_1`, `ψ_{2,1}`, `ψ_{2,2}`, …
pub fn build_momentum_vectors(basis: &FockBasis, label: MomentumLabel) -> Result<Vec<MomentumVector>> {
    let mut out = Vec::new();
    for state in candidate_states(basis.sites()) {
        let raw = raw_momentum_vector(basis, label, state)?;
        let norm = raw.norm();
        if norm < VANISHING_NORM {
            continue;
        }
        out.push(MomentumVector {
            state,
            amplitudes: raw / C64::new(norm, 0.0),
        });
    }
    Ok(out)
}

/// One Hermitian block of `H_R`.
#[derive(Debug, Clone)]
pub struct MomentumBlock {
    pub label: MomentumLabel,
    pub vectors: Vec<MomentumVector>,
    pub hmatrix: DMatrix<C64>,
}

impl MomentumBlock {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Expand block coordinates into the occupation basis.
    pub fn embed(&self, coeffs: &DVector<C64>) -> DVector<C64> {
        let len = self.vectors.first().map_or(0, |v| v.amplitudes.len());
        let mut out = DVector::zeros(len);
        for (v, c) in self.vectors.iter().zip(coeffs.iter()) {
            out += &v.amplitudes * *c;
        }
        out
    }

    /// Position of a family within the block, if present.
    pub fn position(&self, state: MomentumState) -> Option<usize> {
        self.vectors.iter().position(|v| v.state == state)
    }

    /// Quanta count of each block coordinate.
    pub fn quanta(&self) -> Vec<u32> {
        self.vectors.iter().map(|v| v.state.quanta()).collect()
    }
}

/// `⟨v_a|H|v_b⟩` over the given orthonormal vectors.
pub fn project_block(
    h: &LinearOperator,
    label: MomentumLabel,
    vectors: Vec<MomentumVector>,
) -> Result<MomentumBlock> {
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let amps: Vec<DVector<C64>> = vectors.iter().map(|v| v.amplitudes.clone()).collect();
    if let Some(bad) = amps.iter().find(|a| a.len() != h.domain().len()) {
        return Err(Error::LengthMismatch {
            expected: h.domain().len(),
            found: bad.len(),
        });
    }
    let deviation = linalg::gram_deviation(&amps);
    if deviation > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    let images: Vec<DVector<C64>> = amps.iter().map(|a| h.apply(a)).collect();
    let n = vectors.len();
    let hmatrix = DMatrix::from_fn(n, n, |r, c| amps[r].dotc(&images[c]));
    Ok(MomentumBlock {
        label,
        vectors,
        hmatrix,
    })
}

/// All blocks of `H_R`, `ν` descending.
pub fn assemble_h_r(f: usize, gamma: f64, lambda: f64, exec: Execution) -> Result<Vec<MomentumBlock>> {
    let basis = ops::at_most(f, 2)?;
    let h = ops::build_hamiltonian(gamma, lambda, &basis)?;
    assemble_blocks(&h, exec)
}

/// Blocks of an already built Hamiltonian on `AtMost(2)`.
pub fn assemble_blocks(h: &LinearOperator, exec: Execution) -> Result<Vec<MomentumBlock>> {
    let basis: Arc<FockBasis> = h.domain().clone();
    let labels = momentum_values(basis.sites())?;
    exec.try_map(labels, |label| {
        let vectors = build_momentum_vectors(&basis, label)?;
        project_block(h, label, vectors)
    })
}

/// Block dimension predicted by counting, for each label of `momentum_values(f)`.
pub fn expected_block_dimension(label: MomentumLabel) -> usize {
    let f = label.sites;
    if f % 2 == 1 {
        if label.nu == 0 {
            (f + 5) / 2
        } else {
            (f + 3) / 2
        }
    } else if label.nu == 0 {
        (f + 6) / 2
    } else if label.nu % 2 != 0 {
        (f + 2) / 2
    } else {
        (f + 4) / 2
    }
}

/// Closed-form blocks of `H_R` sliced to a single momentum.
///
/// These are transcriptions kept for cross-checking [`project_block`]; the
/// momentum phases follow the `q`, `p` conventions, so only
/// phase-independent quantities (eigenvalues, moduli) are comparable.
pub mod closed_form {
    use super::*;

    fn q(label: MomentumLabel) -> C64 {
        C64::new(1.0, 0.0) + C64::from_polar(1.0, label.k())
    }

    fn p(label: MomentumLabel) -> C64 {
        let f = label.sites as f64;
        let nu = label.nu as f64;
        C64::from_polar(1.0, PI * nu * (f + 1.0) / f) + C64::from_polar(1.0, PI * nu * (f - 1.0) / f)
    }

    /// Whether the separation-`f/2` family survives for even `f`.
    fn has_half_ring(label: MomentumLabel) -> bool {
        label.sites.is_multiple_of(2) && label.nu % 2 == 0
    }

    /// Number of `ψ_{2,b}` vectors present in the block.
    pub fn two_quanta_dim(label: MomentumLabel) -> usize {
        let f = label.sites;
        if f % 2 == 1 {
            f.div_ceil(2)
        } else {
            f / 2 + usize::from(has_half_ring(label))
        }
    }

    /// `(H_01)`: coupling of `|0>` to `ψ_1`, present only at `ν = 0`.
    pub fn h01(f: usize, lambda: f64, label: MomentumLabel) -> Option<f64> {
        (label.nu == 0).then(|| -2.0 * lambda * (f as f64).sqrt())
    }

    /// `(H_11) = -2 cos(2πν/f)`.
    pub fn h11(label: MomentumLabel) -> f64 {
        -2.0 * label.k().cos()
    }

    /// Two-quanta block `H_22`.
    pub fn h22(f: usize, gamma: f64, label: MomentumLabel) -> DMatrix<C64> {
        let m = two_quanta_dim(label);
        let mut h = DMatrix::<C64>::zeros(m, m);
        let s2 = std::f64::consts::SQRT_2;
        let q = q(label);
        h[(0, 0)] = C64::new(-gamma, 0.0);
        if f == 1 {
            h[(0, 0)] -= C64::new(4.0, 0.0);
            return h;
        }
        if f == 2 {
            // ψ_{2,2} = |1,1> is the half-ring pattern itself
            if m == 2 {
                h[(0, 1)] = -q.conj() * 2.0;
                h[(1, 0)] = -q * 2.0;
            }
            return h;
        }
        let chain = if f % 2 == 1 { m } else { f / 2 };
        for i in 0..chain - 1 {
            let coupling = if i == 0 { s2 } else { 1.0 };
            h[(i, i + 1)] = -q.conj() * coupling;
            h[(i + 1, i)] = -q * coupling;
        }
        if f % 2 == 1 {
            h[(m - 1, m - 1)] -= p(label);
        } else if has_half_ring(label) {
            h[(chain - 1, chain)] = -q.conj() * s2;
            h[(chain, chain - 1)] = -q * s2;
        }
        h
    }

    /// Row `ψ_1 → ψ_{2,b}` of `H_12`.
    pub fn h12(f: usize, lambda: f64, label: MomentumLabel) -> DMatrix<C64> {
        let m = two_quanta_dim(label);
        let s2 = std::f64::consts::SQRT_2;
        let mut row = DMatrix::<C64>::zeros(1, m);
        row[(0, 0)] = C64::new(-s2 * lambda, 0.0);
        let separations = if f % 2 == 1 { m - 1 } else { (f / 2).saturating_sub(1) };
        for j in 1..=separations {
            row[(0, j)] = -(C64::new(1.0, 0.0) + C64::from_polar(1.0, label.k() * j as f64)) * lambda;
        }
        if f.is_multiple_of(2) && has_half_ring(label) {
            row[(0, m - 1)] = C64::new(-s2 * lambda, 0.0);
        }
        row
    }
}
