//! Symmetric tridiagonal eigenproblems: implicit-shift QL for the full
//! spectrum and inverse iteration for single eigenvectors.

use crate::error::{Error, Result};

/// All eigenvalues of the symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `off` (`off.len() == diag.len() − 1`), ascending.
pub fn symmetric_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::Eigen(format!(
            "off-diagonal length {} does not match diagonal length {n}",
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Eigen(format!(
                    "QL iteration did not converge for index {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Solve `(T − shift·I) x = rhs` by Gaussian elimination without pivoting.
fn shifted_solve(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let tiny = f64::EPSILON * diag.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut pivot = diag[0] - shift;
    if pivot.abs() < tiny {
        pivot = tiny;
    }
    x[0] = rhs[0] / pivot;
    for i in 1..n {
        c[i - 1] = off[i - 1] / pivot;
        pivot = diag[i] - shift - off[i - 1] * c[i - 1];
        if pivot.abs() < tiny {
            pivot = tiny;
        }
        x[i] = (rhs[i] - off[i - 1] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}

/// Unit-norm eigenvector for an eigenvalue estimate, by inverse iteration.
pub fn eigenvector(diag: &[f64], off: &[f64], eigenvalue: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::Eigen("inconsistent tridiagonal dimensions".into()));
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..6 {
        let mut w = shifted_solve(diag, off, eigenvalue, &v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Eigen("inverse iteration broke down".into()));
        }
        w.iter_mut().for_each(|x| *x /= norm);
        v = w;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 200;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let ev = symmetric_eigenvalues(&diag, &off).unwrap();
        for (k, lam) in ev.iter().enumerate() {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (2.0 * (n + 1) as f64);
            let exact = 4.0 * theta.sin().powi(2);
            assert!((lam - exact).abs() < 1e-12, "k={k}: {lam} vs {exact}");
        }
    }

    #[test]
    fn small_dense_check() {
        // [[2,1,0],[1,3,1],[0,1,4]]: characteristic roots 3, 3±√3
        let ev = symmetric_eigenvalues(&[2.0, 3.0, 4.0], &[1.0, 1.0]).unwrap();
        let s3 = 3f64.sqrt();
        for (got, want) in ev.iter().zip([3.0 - s3, 3.0, 3.0 + s3]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_iteration_recovers_sine_mode() {
        let n = 100;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let ev = symmetric_eigenvalues(&diag, &off).unwrap();
        let v = eigenvector(&diag, &off, ev[0]).unwrap();
        let sign = v[n / 2].signum();
        let norm: f64 = (1..=n)
            .map(|j| {
                (j as f64 * std::f64::consts::PI / (n + 1) as f64)
                    .sin()
                    .powi(2)
            })
            .sum::<f64>()
            .sqrt();
        for (j, x) in v.iter().enumerate() {
            let exact = ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).sin() / norm;
            assert!((sign * x - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(symmetric_eigenvalues(&[1.0, 2.0], &[]).is_err());
    }
}
