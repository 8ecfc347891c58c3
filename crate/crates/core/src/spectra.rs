//! Spectra of the momentum blocks: diagonalization, characteristic
//! polynomials, coupling sweeps and the soliton band.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, Polynomial};
use crate::momentum::{self, MomentumBlock, MomentumLabel};
use crate::C64;

pub use crate::formulas::{verify_eigenvector_formulas, FormulaCheck};

const HERMITIAN_TOL: f64 = 1e-10;

/// Eigen-decomposition of one block, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub label: MomentumLabel,
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors in block coordinates.
    pub eigenvectors: DMatrix<C64>,
}

pub fn diagonalize(block: &MomentumBlock) -> Result<BlockSpectrum> {
    let (eigenvalues, eigenvectors) = linalg::hermitian_eigen(&block.hmatrix, HERMITIAN_TOL)?;
    Ok(BlockSpectrum {
        label: block.label,
        eigenvalues,
        eigenvectors,
    })
}

/// Monic characteristic polynomial `Π (E - E_i)` of a block.
pub fn char_poly(block: &MomentumBlock) -> Result<Polynomial> {
    let values = linalg::hermitian_eigenvalues(&block.hmatrix, HERMITIAN_TOL)?;
    Ok(Polynomial::from_roots(&values))
}

#[derive(Debug, Clone)]
pub struct SolvedBlock {
    pub block: MomentumBlock,
    pub spectrum: BlockSpectrum,
}

impl SolvedBlock {
    pub fn label(&self) -> MomentumLabel {
        self.block.label
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// Eigenvector `level` in block coordinates.
    pub fn block_eigenvector(&self, level: usize) -> DVector<C64> {
        self.spectrum.eigenvectors.column(level).into_owned()
    }

    /// Eigenvector `level` expanded over the occupation basis of `V_0 ⊕ V_1 ⊕ V_2`.
    pub fn eigenvector(&self, level: usize) -> DVector<C64> {
        self.block.embed(&self.block_eigenvector(level))
    }

    /// Weight of eigenvector `level` on each quanta sector `[n=0, n=1, n=2]`.
    pub fn sector_weights(&self, level: usize) -> [f64; 3] {
        let mut w = [0.0; 3];
        let quanta = self.block.quanta();
        for (i, n) in quanta.iter().enumerate() {
            w[*n as usize] += self.spectrum.eigenvectors[(i, level)].norm_sqr();
        }
        w
    }
}

/// Spectrum of `H` on the invariant subspace for one parameter set.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub f: usize,
    pub gamma: f64,
    pub lambda: f64,
    /// Blocks in `ν`-descending order.
    pub blocks: Vec<SolvedBlock>,
}

impl SpectrumResult {
    pub fn block(&self, nu: i32) -> Option<&SolvedBlock> {
        self.blocks.iter().find(|b| b.label().nu() == nu)
    }

    /// Union of all block eigenvalues, ascending.
    pub fn all_eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(|b| b.eigenvalues().iter().copied())
            .collect();
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.block.dim()).sum()
    }
}

pub fn solve_blocks(blocks: Vec<MomentumBlock>, exec: Execution) -> Result<Vec<SolvedBlock>> {
    exec.try_map(blocks, |block| {
        let spectrum = diagonalize(&block)?;
        Ok(SolvedBlock { block, spectrum })
    })
}

pub fn compute_spectrum(f: usize, gamma: f64, lambda: f64, exec: Execution) -> Result<SpectrumResult> {
    let blocks = momentum::assemble_h_r(f, gamma, lambda, exec)?;
    Ok(SpectrumResult {
        f,
        gamma,
        lambda,
        blocks: solve_blocks(blocks, exec)?,
    })
}

/// Per-momentum lowest eigenvalue and its gap to everything else.
#[derive(Debug, Clone, Serialize)]
pub struct SolitonBand {
    /// `(ν, E_min(ν))`, in block order.
    pub minima: Vec<(i32, f64)>,
    /// Lowest non-band eigenvalue minus the highest band eigenvalue.
    pub margin: f64,
    /// Smallest gap between the two lowest eigenvalues of a single block.
    pub momentum_margin: f64,
}

impl SolitonBand {
    /// Separated from every other eigenvalue at every momentum at once.
    pub fn is_separated(&self) -> bool {
        self.margin > 0.0
    }

    /// Below the other eigenvalues of its own momentum, for every momentum.
    pub fn is_separated_per_momentum(&self) -> bool {
        self.momentum_margin > 0.0
    }
}

pub fn soliton_band(result: &SpectrumResult) -> SolitonBand {
    let mut minima = Vec::with_capacity(result.blocks.len());
    let mut band_top = f64::NEG_INFINITY;
    let mut rest_bottom = f64::INFINITY;
    let mut momentum_margin = f64::INFINITY;
    for b in &result.blocks {
        let values = b.eigenvalues();
        if let Some(&lowest) = values.first() {
            minima.push((b.label().nu(), lowest));
            band_top = band_top.max(lowest);
        }
        if let Some(&next) = values.get(1) {
            rest_bottom = rest_bottom.min(next);
            momentum_margin = momentum_margin.min(next - values[0]);
        }
    }
    SolitonBand {
        minima,
        margin: rest_bottom - band_top,
        momentum_margin,
    }
}

/// One eigenvalue curve of a block followed across the coupling grid.
#[derive(Debug, Clone, Serialize)]
pub struct LevelCurve {
    pub nu: i32,
    /// Quanta sector the curve starts in at the first grid point.
    pub n_tag: u32,
    /// Energy at each grid point.
    pub energies: Vec<f64>,
    /// Sorted level index at each grid point.
    pub levels: Vec<usize>,
}

/// Eigenvalues over a coupling grid with levels paired into continuous curves.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub f: usize,
    pub gamma: f64,
    pub lambda_grid: Vec<f64>,
    /// `table[point][block][level]`, levels ascending, blocks `ν` descending.
    pub table: Vec<Vec<Vec<f64>>>,
    pub labels: Vec<MomentumLabel>,
    pub curves: Vec<LevelCurve>,
}

impl SweepResult {
    /// Quanta tag of sorted `level` of block `block` at grid point `point`.
    pub fn n_tag(&self, point: usize, block: usize, level: usize) -> u32 {
        let nu = self.labels[block].nu();
        self.curves
            .iter()
            .find(|c| c.nu == nu && c.levels[point] == level)
            .map(|c| c.n_tag)
            .expect("every level belongs to a curve")
    }

    /// Largest ratio `|ΔE| / (10·Δλ·(1+|E|))` between paired neighbours; below 1 means continuous.
    pub fn continuity_ratio(&self) -> f64 {
        let mut worst = 0.0f64;
        for curve in &self.curves {
            for i in 1..self.lambda_grid.len() {
                let step = self.lambda_grid[i] - self.lambda_grid[i - 1];
                let bound = 10.0 * step * (1.0 + curve.energies[i - 1].abs());
                if bound > 0.0 {
                    worst = worst.max((curve.energies[i] - curve.energies[i - 1]).abs() / bound);
                }
            }
        }
        worst
    }
}

struct PointBlock {
    hmatrix: DMatrix<C64>,
    values: Vec<f64>,
    vectors: DMatrix<C64>,
    quanta: Vec<u32>,
}

pub fn sweep(f: usize, gamma: f64, lambda_grid: &[f64], exec: Execution) -> Result<SweepResult> {
    if lambda_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if lambda_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::UnsortedGrid);
    }
    let labels = momentum::momentum_values(f)?;
    // each grid point is independent; blocks within a point stay sequential
    let points: Vec<Vec<PointBlock>> = exec.try_map(lambda_grid.to_vec(), |lambda| {
        let blocks = momentum::assemble_h_r(f, gamma, lambda, Execution::Sequential)?;
        blocks
            .iter()
            .map(|block| {
                let s = diagonalize(block)?;
                Ok(PointBlock {
                    hmatrix: block.hmatrix.clone(),
                    values: s.eigenvalues,
                    vectors: s.eigenvectors,
                    quanta: block.quanta(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut curves = Vec::new();
    for (b, label) in labels.iter().enumerate() {
        let first = &points[0][b];
        let tags = initial_tags(first, lambda_grid[0]);
        let dim = first.values.len();
        // track[c] = level of curve c at the current point
        let mut track: Vec<usize> = (0..dim).collect();
        let mut history: Vec<Vec<usize>> = vec![track.clone()];
        for p in 1..points.len() {
            let pairing = pair_levels(&points[p - 1][b], &points[p][b]);
            track = track.iter().map(|&lvl| pairing[lvl]).collect();
            history.push(track.clone());
        }
        for c in 0..dim {
            let levels: Vec<usize> = history.iter().map(|t| t[c]).collect();
            let energies = levels
                .iter()
                .enumerate()
                .map(|(p, &lvl)| points[p][b].values[lvl])
                .collect();
            curves.push(LevelCurve {
                nu: label.nu(),
                n_tag: tags[c],
                energies,
                levels,
            });
        }
    }
    let table = points
        .into_iter()
        .map(|blocks| blocks.into_iter().map(|pb| pb.values).collect())
        .collect();
    Ok(SweepResult {
        f,
        gamma,
        lambda_grid: lambda_grid.to_vec(),
        table,
        labels,
        curves,
    })
}

// At λ = 0 the block splits by quanta, so tags come from diagonalizing each
// sector separately and matching sorted eigenvalues. Elsewhere use the
// dominant sector of each eigenvector.
fn initial_tags(point: &PointBlock, lambda: f64) -> Vec<u32> {
    let dim = point.values.len();
    if lambda == 0.0 {
        let mut tagged: Vec<(f64, u32)> = Vec::with_capacity(dim);
        for n in 0..=2u32 {
            let idx: Vec<usize> = (0..dim).filter(|&i| point.quanta[i] == n).collect();
            if idx.is_empty() {
                continue;
            }
            let sub = DMatrix::from_fn(idx.len(), idx.len(), |r, c| point.hmatrix[(idx[r], idx[c])]);
            let values =
                linalg::hermitian_eigenvalues(&sub, HERMITIAN_TOL).expect("sector block is hermitian");
            tagged.extend(values.into_iter().map(|e| (e, n)));
        }
        tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
        return tagged.into_iter().map(|(_, n)| n).collect();
    }
    (0..dim)
        .map(|level| {
            let mut w = [0.0f64; 3];
            for i in 0..dim {
                w[point.quanta[i] as usize] += point.vectors[(i, level)].norm_sqr();
            }
            (0..3).max_by(|&a, &b| w[a].total_cmp(&w[b])).unwrap() as u32
        })
        .collect()
}

// Greedy nearest-eigenvalue matching; near-ties prefer larger eigenvector overlap.
fn pair_levels(prev: &PointBlock, next: &PointBlock) -> Vec<usize> {
    const TIE: f64 = 1e-9;
    let n = prev.values.len();
    let mut candidates: Vec<(f64, f64, usize, usize)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let gap = (prev.values[i] - next.values[j]).abs();
            let overlap = prev.vectors.column(i).dotc(&next.vectors.column(j)).norm();
            candidates.push((gap, overlap, i, j));
        }
    }
    candidates.sort_by(|a, b| {
        if (a.0 - b.0).abs() > TIE {
            a.0.total_cmp(&b.0)
        } else {
            b.1.total_cmp(&a.1)
        }
    });
    let mut pairing = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for (_, _, i, j) in candidates {
        if pairing[i] == usize::MAX && !taken[j] {
            pairing[i] = j;
            taken[j] = true;
        }
    }
    pairing
}

/// Inclusive grid `start, start+step, …, stop` with `1e-12` slack at the end.
pub fn lambda_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || stop < start {
        return Err(Error::UnsortedGrid);
    }
    let count = ((stop - start) / step + 1e-12).floor() as usize;
    Ok((0..=count).map(|i| start + step * i as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn assert_values(got: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(got.len(), expected.len());
        for (g, e) in got.iter().zip(expected) {
            assert_abs_diff_eq!(g, e, epsilon = tol);
        }
    }

    #[test]
    fn diagonalize_examples() {
        let s = compute_spectrum(1, 3.0, 0.5, Execution::Sequential).unwrap();
        assert_values(s.blocks[0].eigenvalues(), &[-7.101, -2.323, 0.424], 1.5e-3);
        let s = compute_spectrum(3, 3.0, 0.0, Execution::Sequential).unwrap();
        for nu in [1, -1] {
            assert_values(s.block(nu).unwrap().eigenvalues(), &[-3.450, 1.000, 1.450], 1.5e-3);
        }
        let s = compute_spectrum(2, 3.0, 0.3, Execution::Sequential).unwrap();
        assert_values(s.block(1).unwrap().eigenvalues(), &[-3.036, 2.036], 1.5e-3);
    }

    #[test]
    fn residuals_and_orthonormality() {
        for f in 1..=6 {
            let s = compute_spectrum(f, 3.0, 0.37, Execution::Parallel).unwrap();
            let basis = crate::ops::at_most(f, 2).unwrap();
            let h = crate::ops::build_hamiltonian(3.0, 0.37, &basis).unwrap();
            for b in &s.blocks {
                let mut vs = Vec::new();
                for (level, &e) in b.eigenvalues().iter().enumerate() {
                    let v = b.eigenvector(level);
                    let r = h.apply(&v) - &v * C64::new(e, 0.0);
                    assert!(r.norm() < 1e-9);
                    vs.push(v);
                }
                assert!(linalg::gram_deviation(&vs) < 1e-12);
            }
        }
    }

    #[test]
    fn char_poly_examples() {
        let (g, l) = (3.0, 0.3);
        let s = compute_spectrum(2, g, l, Execution::Sequential).unwrap();
        let p = char_poly(&s.block(0).unwrap().block).unwrap();
        let expected = [
            1.0,
            g + 2.0,
            2.0 * g - 16.0 - 12.0 * l * l,
            16.0 * l * l - 10.0 * g * l * l - 32.0,
            128.0 * l * l,
        ];
        assert_values(&p.descending(), &expected, 1e-10);
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn soliton_band_examples() {
        let s = compute_spectrum(3, 3.0, 0.0, Execution::Sequential).unwrap();
        let band = soliton_band(&s);
        let minima: Vec<f64> = band.minima.iter().map(|m| m.1).collect();
        assert_values(&minima, &[-3.450, -5.372, -3.450], 1.5e-3);
        assert_abs_diff_eq!(band.margin, 1.450, epsilon = 1.5e-3);
        let s = compute_spectrum(3, 3.0, 0.5, Execution::Sequential).unwrap();
        let band = soliton_band(&s);
        assert_abs_diff_eq!(band.margin, 0.949, epsilon = 1.5e-3);
        let s = compute_spectrum(1, 3.0, 0.2, Execution::Sequential).unwrap();
        let band = soliton_band(&s);
        let v = s.blocks[0].eigenvalues();
        assert_abs_diff_eq!(band.margin, v[1] - v[0]);
        assert_abs_diff_eq!(band.momentum_margin, v[1] - v[0]);
        // at f = 7 the zero-momentum continuum dips below the band edge near k = π
        let s = compute_spectrum(7, 3.0, 0.0, Execution::Sequential).unwrap();
        let band = soliton_band(&s);
        assert!(!band.is_separated());
        assert!(band.is_separated_per_momentum());
    }

    #[test]
    fn sweep_tags_and_continuity() {
        let grid = lambda_grid(0.0, 0.5, 0.01).unwrap();
        assert_eq!(grid.len(), 51);
        let sw = sweep(3, 3.0, &grid, Execution::Parallel).unwrap();
        assert_eq!(sw.curves.len(), 10);
        assert!(sw.continuity_ratio() < 1.0);
        let zero_block = sw.labels.iter().position(|l| l.nu() == 0).unwrap();
        let tags: Vec<u32> = (0..4).map(|lvl| sw.n_tag(0, zero_block, lvl)).collect();
        // -5.372 (n=2), -2 (n=1), 0 (n=0), 0.372 (n=2)
        assert_eq!(tags, vec![2, 1, 0, 2]);
        let mut n1: Vec<f64> = sw
            .curves
            .iter()
            .filter(|c| c.n_tag == 1)
            .map(|c| c.energies[0])
            .collect();
        n1.sort_by(f64::total_cmp);
        assert_values(&n1, &[-2.0, 1.0, 1.0], 1e-12);
        assert_eq!(sw.curves.iter().filter(|c| c.n_tag == 0).count(), 1);
    }

    #[test]
    fn sweep_sequential_matches_parallel() {
        let grid = lambda_grid(0.0, 0.2, 0.05).unwrap();
        let a = sweep(4, 3.0, &grid, Execution::Sequential).unwrap();
        let b = sweep(4, 3.0, &grid, Execution::Parallel).unwrap();
        assert_eq!(a.table, b.table);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        assert_eq!(sweep(2, 3.0, &[], Execution::Sequential).unwrap_err(), Error::EmptyGrid);
        assert_eq!(
            sweep(2, 3.0, &[0.2, 0.1], Execution::Sequential).unwrap_err(),
            Error::UnsortedGrid
        );
        assert!(lambda_grid(0.5, 0.0, 0.1).is_err());
        assert!(lambda_grid(0.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn grid_is_inclusive() {
        let g = lambda_grid(0.0, 0.5, 0.1).unwrap();
        assert_eq!(g.len(), 6);
        assert_abs_diff_eq!(g[5], 0.5, epsilon = 1e-12);
    }
}
