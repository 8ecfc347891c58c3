//! Quasi-exactly-solvable extension of the periodic Bose-Hubbard chain.
//!
//! The Hamiltonian `H = H_BH + H_λ` acts on `f` bosonic sites. `H_BH` conserves
//! the number of quanta, while `H_λ` mixes neighbouring quanta sectors but keeps
//! the subspace with at most two quanta invariant. This crate builds every
//! operator as an explicit dense matrix over an occupation-number basis,
//! block-diagonalizes the invariant subspace by lattice momentum, and
//! provides the verification machinery (tables, characteristic polynomials,
//! eigenvector formulas, Lie-algebra identities) used by the CLI.
//!
//! Modules, bottom-up:
//!
//! - [`fock`]: occupation vectors, bases and the cyclic shift.
//! - [`ops`]: ladder operators, `N`, `T`, `H_BH`, `H_λ`, commutators.
//! - [`momentum`]: translation-adapted basis and per-momentum blocks.
//! - [`spectra`]: diagonalization, characteristic polynomials, sweeps, soliton band.
//! - [`algebra`]: sl(2), sl(f) grading, sl(3) and osp(1|2f) checks.
//! - [`verify`]: aggregated pass/fail suites.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod fock;
pub mod formulas;
pub mod linalg;
pub mod momentum;
pub mod ops;
pub mod reference;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fock::{enumerate_basis, translate, FockBasis, OccupationVector, QuantaSelector};
pub use momentum::{assemble_h_r, momentum_values, MomentumBlock, MomentumLabel};
pub use ops::LinearOperator;
pub use spectra::{compute_spectrum, soliton_band, sweep, SpectrumResult, SweepResult};

/// Complex scalar used by every operator matrix.
pub type C64 = num_complex::Complex64;
