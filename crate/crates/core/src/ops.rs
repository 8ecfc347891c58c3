//! Second-quantized operators as dense matrices over occupation bases.
//!
//! Ladder operators on an `AtMost(n)` basis are square and truncated: an
//! image with more than `n` quanta is dropped. Identities involving products
//! of ladder operators therefore only hold on states far enough below the
//! top sector; callers build with headroom and restrict before comparing.
//! On `Exactly(n)` bases the ladder operators map between neighbouring
//! sectors without truncation.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, translate, FockBasis, QuantaSelector};
use crate::linalg;
use crate::C64;

/// Matrix of an operator between two occupation bases.
///
/// Rows index `codomain` states, columns index `domain` states.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    domain: Arc<FockBasis>,
    codomain: Arc<FockBasis>,
    matrix: DMatrix<C64>,
}

impl LinearOperator {
    pub fn new(
        domain: Arc<FockBasis>,
        codomain: Arc<FockBasis>,
        matrix: DMatrix<C64>,
    ) -> Result<Self> {
        if matrix.nrows() != codomain.len() || matrix.ncols() != domain.len() {
            return Err(Error::BasisMismatch(format!(
                "matrix is {}x{}, bases have {} and {} states",
                matrix.nrows(),
                matrix.ncols(),
                codomain.len(),
                domain.len()
            )));
        }
        Ok(LinearOperator {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: Arc<FockBasis>, codomain: Arc<FockBasis>) -> Self {
        let matrix = DMatrix::zeros(codomain.len(), domain.len());
        LinearOperator {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(basis: Arc<FockBasis>) -> Self {
        let n = basis.len();
        LinearOperator {
            domain: basis.clone(),
            codomain: basis,
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn domain(&self) -> &Arc<FockBasis> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FockBasis> {
        &self.codomain
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// `self · rhs`, i.e. apply `rhs` first.
    pub fn compose(&self, rhs: &LinearOperator) -> Result<LinearOperator> {
        if rhs.codomain != self.domain {
            return Err(Error::BasisMismatch(
                "codomain of right factor differs from domain of left factor".into(),
            ));
        }
        Ok(LinearOperator {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: sparse_product(&self.matrix, &rhs.matrix, 0..rhs.matrix.ncols()),
        })
    }

    fn check_same_shape(&self, other: &LinearOperator) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::BasisMismatch("operands act between different bases".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.check_same_shape(other)?;
        Ok(self.with_matrix(&self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.check_same_shape(other)?;
        Ok(self.with_matrix(&self.matrix - &other.matrix))
    }

    pub fn scale(&self, factor: C64) -> LinearOperator {
        self.with_matrix(&self.matrix * factor)
    }

    pub fn scale_real(&self, factor: f64) -> LinearOperator {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn adjoint(&self) -> LinearOperator {
        LinearOperator {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    fn with_matrix(&self, matrix: DMatrix<C64>) -> LinearOperator {
        LinearOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    /// Largest entrywise deviation from hermiticity; infinite for non-square operators.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_endomorphism() {
            return f64::INFINITY;
        }
        linalg::hermitian_deviation(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.matrix)
    }

    /// Sub-matrix with the given codomain rows and domain columns.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| self.matrix[(rows[r], cols[c])])
    }

    /// Columns of `self · rhs` for the listed domain columns only.
    pub fn compose_columns(&self, rhs: &LinearOperator, cols: &[usize]) -> Result<DMatrix<C64>> {
        if rhs.codomain != self.domain {
            return Err(Error::BasisMismatch(
                "codomain of right factor differs from domain of left factor".into(),
            ));
        }
        Ok(sparse_product(&self.matrix, &rhs.matrix, cols.iter().copied()))
    }
}

// Ladder-operator matrices are very sparse, so skip zero entries of the right factor.
fn sparse_product(
    left: &DMatrix<C64>,
    right: &DMatrix<C64>,
    cols: impl ExactSizeIterator<Item = usize>,
) -> DMatrix<C64> {
    let zero = C64::new(0.0, 0.0);
    let mut out = DMatrix::zeros(left.nrows(), cols.len());
    for (c, col) in cols.enumerate() {
        for (r, &v) in right.column(col).iter().enumerate() {
            if v != zero {
                out.column_mut(c).axpy(v, &left.column(r), C64::new(1.0, 0.0));
            }
        }
    }
    out
}

/// `AB - BA` for two operators on the same basis.
pub fn commutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    bracket(a, b, -1.0)
}

/// `AB + BA` for two operators on the same basis.
pub fn anticommutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    bracket(a, b, 1.0)
}

fn bracket(a: &LinearOperator, b: &LinearOperator, sign: f64) -> Result<LinearOperator> {
    if !a.is_endomorphism() || !b.is_endomorphism() || a.domain != b.domain {
        return Err(Error::BasisMismatch(
            "brackets need two operators on one common basis".into(),
        ));
    }
    let n = a.matrix.ncols();
    let ab = sparse_product(&a.matrix, &b.matrix, 0..n);
    let ba = sparse_product(&b.matrix, &a.matrix, 0..n);
    Ok(a.with_matrix(ab + ba * C64::new(sign, 0.0)))
}

/// Zero-based site for a one-based index `j`; `j = f + 1` wraps to site 1.
pub fn site_position(j: usize, f: usize) -> Result<usize> {
    if j == 0 || j > f + 1 {
        return Err(Error::SiteOutOfRange { index: j, sites: f });
    }
    Ok((j - 1) % f)
}

fn shifted_basis(basis: &Arc<FockBasis>, delta: i64) -> Result<Arc<FockBasis>> {
    match basis.selector() {
        QuantaSelector::AtMost(_) => Ok(basis.clone()),
        QuantaSelector::Exactly(n) => {
            let target = (n as i64 + delta).max(0) as u32;
            Ok(Arc::new(enumerate_basis(
                basis.sites(),
                QuantaSelector::Exactly(target),
            )?))
        }
    }
}

/// `a_j` with `⟨…,n_j-1,…| a_j |…,n_j,…⟩ = √n_j`.
///
/// On `Exactly(n)` the codomain is `Exactly(n-1)` (for `n = 0` the operator
/// is zero into `Exactly(0)`); on `AtMost(n)` it is the same basis.
pub fn annihilation(j: usize, domain: &Arc<FockBasis>) -> Result<LinearOperator> {
    let site = site_position(j, domain.sites())?;
    let codomain = shifted_basis(domain, -1)?;
    let mut matrix = DMatrix::zeros(codomain.len(), domain.len());
    for (col, state) in domain.states().iter().enumerate() {
        let n = state.get(site);
        if n == 0 {
            continue;
        }
        if let Some(row) = codomain.position(&state.with_site(site, n - 1)) {
            matrix[(row, col)] = C64::new((n as f64).sqrt(), 0.0);
        }
    }
    LinearOperator::new(domain.clone(), codomain, matrix)
}

/// `a_j†` with `⟨…,n_j+1,…| a_j† |…,n_j,…⟩ = √(n_j+1)`; site indices wrap (`a_{f+1}† = a_1†`).
///
/// On `Exactly(n)` the codomain is `Exactly(n+1)`; on `AtMost(n)` images
/// leaving the basis are dropped.
pub fn creation(j: usize, domain: &Arc<FockBasis>) -> Result<LinearOperator> {
    let site = site_position(j, domain.sites())?;
    let codomain = shifted_basis(domain, 1)?;
    let mut matrix = DMatrix::zeros(codomain.len(), domain.len());
    for (col, state) in domain.states().iter().enumerate() {
        let n = state.get(site);
        if let Some(row) = codomain.position(&state.with_site(site, n + 1)) {
            matrix[(row, col)] = C64::new(((n + 1) as f64).sqrt(), 0.0);
        }
    }
    LinearOperator::new(domain.clone(), codomain, matrix)
}

/// `a_i† a_k` on a single basis (zero-based sites), built from its matrix elements.
///
/// Bilinears conserve the number of quanta, so this is exact on every basis.
pub fn hopping(i: usize, k: usize, basis: &Arc<FockBasis>) -> LinearOperator {
    let mut matrix = DMatrix::zeros(basis.len(), basis.len());
    for (col, state) in basis.states().iter().enumerate() {
        let nk = state.get(k);
        if nk == 0 {
            continue;
        }
        let lowered = state.with_site(k, nk - 1);
        let ni = lowered.get(i);
        let image = lowered.with_site(i, ni + 1);
        let amp = ((nk as f64) * ((ni + 1) as f64)).sqrt();
        if let Some(row) = basis.position(&image) {
            matrix[(row, col)] += C64::new(amp, 0.0);
        }
    }
    LinearOperator {
        domain: basis.clone(),
        codomain: basis.clone(),
        matrix,
    }
}

fn diagonal<F>(basis: &Arc<FockBasis>, entry: F) -> LinearOperator
where
    F: Fn(&crate::fock::OccupationVector) -> f64,
{
    let diag = DVector::from_iterator(
        basis.len(),
        basis.states().iter().map(|s| C64::new(entry(s), 0.0)),
    );
    LinearOperator {
        domain: basis.clone(),
        codomain: basis.clone(),
        matrix: DMatrix::from_diagonal(&diag),
    }
}

/// `N = Σ a_j† a_j`.
pub fn build_number(basis: &Arc<FockBasis>) -> LinearOperator {
    diagonal(basis, |s| s.total() as f64)
}

/// Permutation matrix of the cyclic shift `T`.
pub fn build_translation(basis: &Arc<FockBasis>) -> LinearOperator {
    let mut matrix = DMatrix::zeros(basis.len(), basis.len());
    for (col, state) in basis.states().iter().enumerate() {
        let row = basis
            .position(&translate(state))
            .expect("selectors are shift invariant");
        matrix[(row, col)] = C64::new(1.0, 0.0);
    }
    LinearOperator {
        domain: basis.clone(),
        codomain: basis.clone(),
        matrix,
    }
}

/// `H_BH = -Σ_j [a_j† a_{j+1} + a_j† a_{j-1} + (γ/2) a_j† a_j† a_j a_j]`, periodic.
///
/// Both neighbour terms are kept for every `f`, so for `f ≤ 2` the same hop
/// is counted twice (for `f = 1` the hopping part is `-2N`).
pub fn build_h_bh(gamma: f64, basis: &Arc<FockBasis>) -> LinearOperator {
    let f = basis.sites();
    let mut matrix = DMatrix::<C64>::zeros(basis.len(), basis.len());
    for j in 0..f {
        let right = (j + 1) % f;
        let left = (j + f - 1) % f;
        matrix -= hopping(j, right, basis).matrix;
        matrix -= hopping(j, left, basis).matrix;
    }
    let onsite = diagonal(basis, |s| {
        s.occupations()
            .iter()
            .map(|&n| (n as f64) * (n as f64 - 1.0))
            .sum::<f64>()
    });
    matrix -= onsite.matrix * C64::new(gamma / 2.0, 0.0);
    LinearOperator {
        domain: basis.clone(),
        codomain: basis.clone(),
        matrix,
    }
}

/// `H_λ = λ Σ_j (a_j† (N-2) + (N-2) a_j)`.
///
/// Requires an `AtMost(n)` basis with `n ≥ 2`, since the operator mixes sectors.
pub fn build_h_lambda(lambda: f64, basis: &Arc<FockBasis>) -> Result<LinearOperator> {
    match basis.selector() {
        QuantaSelector::AtMost(n) if n >= 2 => {}
        QuantaSelector::AtMost(_) => return Err(Error::InsufficientQuanta { required: 2 }),
        QuantaSelector::Exactly(_) => {
            return Err(Error::BasisMismatch(
                "H_lambda mixes quanta sectors and needs an at-most basis".into(),
            ))
        }
    }
    let shifted_number = build_number(basis).sub(&LinearOperator::identity(basis.clone()))?;
    let shifted_number = shifted_number.sub(&LinearOperator::identity(basis.clone()))?;
    let mut raise = DMatrix::<C64>::zeros(basis.len(), basis.len());
    for j in 1..=basis.sites() {
        raise += creation(j, basis)?.matrix;
    }
    let raise = LinearOperator {
        domain: basis.clone(),
        codomain: basis.clone(),
        matrix: raise,
    };
    let up = raise.compose(&shifted_number)?;
    let down = up.adjoint();
    Ok(up.add(&down)?.scale_real(lambda))
}

/// `H = H_BH + H_λ` on an `AtMost(n ≥ 2)` basis.
pub fn build_hamiltonian(gamma: f64, lambda: f64, basis: &Arc<FockBasis>) -> Result<LinearOperator> {
    build_h_bh(gamma, basis).add(&build_h_lambda(lambda, basis)?)
}

/// Shared `AtMost(n)` basis.
pub fn at_most(f: usize, n: u32) -> Result<Arc<FockBasis>> {
    Ok(Arc::new(enumerate_basis(f, QuantaSelector::AtMost(n))?))
}

/// Shared `Exactly(n)` basis.
pub fn exactly(f: usize, n: u32) -> Result<Arc<FockBasis>> {
    Ok(Arc::new(enumerate_basis(f, QuantaSelector::Exactly(n))?))
}
