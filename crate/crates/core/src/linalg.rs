//! Small dense helpers shared by the operator, momentum and algebra modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::C64;

/// Largest entrywise deviation `|M_ij - conj(M_ji)|`.
pub fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    assert!(m.is_square(), "hermitian_deviation on non-square matrix");
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues ascending.
///
/// Eigenvectors are the columns of the returned matrix, in the same order.
pub fn hermitian_eigen(m: &DMatrix<C64>, tol: f64) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let deviation = hermitian_deviation(m);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    // symmetrize so the solver sees an exactly Hermitian input
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>, tol: f64) -> Result<Vec<f64>> {
    hermitian_eigen(m, tol).map(|(values, _)| values)
}

/// Largest deviation of the Gram matrix of `vectors` from the identity.
pub fn gram_deviation(vectors: &[DVector<C64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((u.dotc(v) - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Orthonormal basis for the span of a set of vectors.
///
/// Modified Gram-Schmidt with one re-orthogonalization pass; vectors whose
/// remainder falls below `drop_tol` (relative to their own norm) are skipped.
#[derive(Debug, Clone)]
pub struct Span {
    basis: Vec<DVector<C64>>,
}

impl Span {
    pub fn new<'a, I>(vectors: I, drop_tol: f64) -> Self
    where
        I: IntoIterator<Item = &'a DVector<C64>>,
    {
        let mut basis: Vec<DVector<C64>> = Vec::new();
        for v in vectors {
            let scale = v.norm();
            if scale == 0.0 {
                continue;
            }
            let mut w = v.clone();
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dotc(&w);
                    w.axpy(-c, b, C64::new(1.0, 0.0));
                }
            }
            let rest = w.norm();
            if rest > drop_tol * scale {
                basis.push(w / C64::new(rest, 0.0));
            }
        }
        Span { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Norm of the component of `v` orthogonal to the span.
    pub fn residual(&self, v: &DVector<C64>) -> f64 {
        // the basis is orthonormal, so one pass suffices; coefficients only touch nonzeros of v
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != C64::new(0.0, 0.0)).collect();
        let mut w = v.clone();
        for b in &self.basis {
            let c: C64 = support.iter().map(|&i| b[i].conj() * v[i]).sum();
            w.axpy(-c, b, C64::new(1.0, 0.0));
        }
        w.norm()
    }
}

/// Flatten a matrix column-major into a vector.
pub fn vectorize(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_iterator(m.len(), m.iter().copied())
}

/// Real polynomial stored with ascending powers: `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn from_ascending(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    /// Coefficients listed from the leading power down, as polynomials are usually printed.
    pub fn from_descending(mut coeffs: Vec<f64>) -> Self {
        coeffs.reverse();
        Polynomial { coeffs }
    }

    /// Monic polynomial `Π (x - r_i)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut coeffs = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn ascending(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<f64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigen_of_pauli_y() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let (values, vectors) = hermitian_eigen(&m, 1e-12).unwrap();
        assert_abs_diff_eq!(values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(values[1], 1.0, epsilon = 1e-14);
        for (k, &value) in values.iter().enumerate() {
            let v = vectors.column(k).into_owned();
            let r = &m * &v - &v * c(value, 0.0);
            assert!(r.norm() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(2., 0.), c(0., 0.)]);
        assert!(matches!(
            hermitian_eigen(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn polynomial_from_roots() {
        let p = Polynomial::from_roots(&[1.0, -2.0, 3.0]);
        // (x-1)(x+2)(x-3) = x^3 - 2x^2 - 5x + 6
        assert_eq!(p.descending(), vec![1.0, -2.0, -5.0, 6.0]);
        assert_eq!(p.degree(), 3);
        assert_abs_diff_eq!(p.eval(2.0), -4.0);
    }

    #[test]
    fn span_residual() {
        let e1 = DVector::from_vec(vec![c(1., 0.), c(0., 0.), c(0., 0.)]);
        let v = DVector::from_vec(vec![c(1., 1.), c(1., 0.), c(0., 0.)]);
        let span = Span::new([&e1, &v, &(&e1 * c(2.0, 0.0))], 1e-12);
        assert_eq!(span.rank(), 2);
        let inside = DVector::from_vec(vec![c(0., 3.), c(-2., 0.), c(0., 0.)]);
        assert!(span.residual(&inside) < 1e-14);
        let outside = DVector::from_vec(vec![c(0., 0.), c(0., 0.), c(0., 2.)]);
        assert_abs_diff_eq!(span.residual(&outside), 2.0, epsilon = 1e-14);
    }
}
