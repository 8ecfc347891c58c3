//! Independent oracle: a hand-rolled Hamiltonian builder on `V0+V1+V2` and a
//! cyclic Jacobi eigensolver. Nothing here calls into the library.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

/// Occupation vectors with at most two quanta, in no particular order.
pub fn states(f: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; f]];
    for i in 0..f {
        let mut s = vec![0; f];
        s[i] = 1;
        out.push(s);
    }
    for i in 0..f {
        for j in i..f {
            let mut s = vec![0; f];
            s[i] += 1;
            s[j] += 1;
            out.push(s);
        }
    }
    out
}

/// Real symmetric matrix of `H_BH + H_λ` on the `≤ 2` quanta states.
pub fn hamiltonian(f: usize, gamma: f64, lambda: f64) -> Vec<Vec<f64>> {
    let basis = states(f);
    let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let d = basis.len();
    let mut h = vec![vec![0.0; d]; d];
    for (col, s) in basis.iter().enumerate() {
        let n: u32 = s.iter().sum();
        for j in 0..f {
            // -a_j† a_{j±1}
            for k in [(j + 1) % f, (j + f - 1) % f] {
                if s[k] == 0 {
                    continue;
                }
                let mut t = s.clone();
                let amp_k = (t[k] as f64).sqrt();
                t[k] -= 1;
                let amp_j = ((t[j] + 1) as f64).sqrt();
                t[j] += 1;
                h[index[&t]][col] -= amp_k * amp_j;
            }
            // -(γ/2) n_j (n_j - 1)
            let nj = s[j] as f64;
            h[col][col] -= 0.5 * gamma * nj * (nj - 1.0);
            // λ a_j† (N - 2): the image stays inside V0+V1+V2 because N - 2 kills V2
            if n < 2 {
                let mut t = s.clone();
                let amp = ((t[j] + 1) as f64).sqrt() * (n as f64 - 2.0);
                t[j] += 1;
                let row = index[&t];
                h[row][col] += lambda * amp;
                h[col][row] += lambda * amp;
            }
        }
    }
    h
}

/// Eigenvalues of a real symmetric matrix, ascending (cyclic Jacobi rotations).
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenvalues of a complex Hermitian `A + iB` through the real embedding
/// `[[A, -B], [B, A]]`, whose spectrum repeats each eigenvalue twice.
pub fn hermitian_eigenvalues(re: &[Vec<f64>], im: &[Vec<f64>]) -> Vec<f64> {
    let n = re.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = re[i][j];
            big[i + n][j + n] = re[i][j];
            big[i][j + n] = -im[i][j];
            big[i + n][j] = im[i][j];
        }
    }
    jacobi_eigenvalues(big).into_iter().step_by(2).collect()
}
