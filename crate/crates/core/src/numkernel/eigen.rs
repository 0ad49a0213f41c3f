//! Hermitian eigendecomposition.
//!
//! Householder reduction of the (symmetrized) input to a complex Hermitian
//! tridiagonal matrix, a diagonal phase change that makes the tridiagonal
//! real, then implicit QL with Wilkinson-style shifts on the real problem.

use super::cmatrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Relative asymmetry accepted before `herm_eig` refuses its input.
pub const HERMITIAN_REL_TOL: f64 = 1e-8;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermEigResult {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEigResult {
    /// `V · diag(values) · V*`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.values.len();
        let scaled = CMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.values[j]);
        &scaled * &self.vectors.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn herm_eig(a: &CMatrix) -> Result<HermEigResult> {
    let a = a.symmetrized(HERMITIAN_REL_TOL)?;
    let n = a.rows();
    if n == 0 {
        return Ok(HermEigResult {
            values: Vec::new(),
            vectors: CMatrix::zeros(0, 0),
        });
    }

    let (diag, off, q) = tridiagonalize(a);

    // Phase change that turns the complex subdiagonal into |e_i|.
    let mut phases = vec![C64::new(1.0, 0.0); n];
    let mut sub = vec![0.0; n];
    for i in 0..n - 1 {
        let mag = off[i].norm();
        sub[i] = mag;
        phases[i + 1] = if mag > 0.0 {
            phases[i] * (off[i] / mag)
        } else {
            phases[i]
        };
    }

    let mut values = diag;
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql2(&mut values, &mut sub, &mut z, n)?;

    // Eigenvectors of the input are Q · D · Z.
    let qd = CMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]));
    let mut vectors = CMatrix::zeros(n, n);
    for (out_col, &src) in order.iter().enumerate() {
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                acc += qd[(i, k)] * z[k * n + src];
            }
            vectors[(i, out_col)] = acc;
        }
    }
    let values = order.iter().map(|&k| values[k]).collect();
    Ok(HermEigResult { values, vectors })
}

/// Eigenvalues only; same contract as [`herm_eig`].
pub fn herm_eigvals(a: &CMatrix) -> Result<Vec<f64>> {
    Ok(herm_eig(a)?.values)
}

/// Returns (diagonal, complex subdiagonal, accumulated unitary Q) with `A = Q T Q*`.
fn tridiagonalize(mut a: CMatrix) -> (Vec<f64>, Vec<C64>, CMatrix) {
    let n = a.rows();
    let mut q = CMatrix::identity(n);
    let zero = C64::new(0.0, 0.0);

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut v: Vec<C64> = (0..m).map(|r| a[(k + 1 + r, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = v[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if xnorm == 0.0 || tail == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let tau = 2.0 / v.iter().map(|z| z.norm_sqr()).sum::<f64>();

        // Trailing block update B <- H B H with H = I - tau v v*.
        let mut p = vec![zero; m];
        for (r, pr) in p.iter_mut().enumerate() {
            let mut acc = zero;
            for c in 0..m {
                acc += a[(k + 1 + r, k + 1 + c)] * v[c];
            }
            *pr = acc * tau;
        }
        let vp: C64 = v.iter().zip(&p).map(|(x, y)| x.conj() * y).sum();
        let kk = 0.5 * tau * vp.re;
        let w: Vec<C64> = p.iter().zip(&v).map(|(&pi, &vi)| pi - vi * kk).collect();
        for r in 0..m {
            for c in 0..m {
                let upd = v[r] * w[c].conj() + w[r] * v[c].conj();
                a[(k + 1 + r, k + 1 + c)] -= upd;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for r in 1..m {
            a[(k + 1 + r, k)] = zero;
            a[(k, k + 1 + r)] = zero;
        }

        // Q <- Q H on columns k+1..n.
        for i in 0..n {
            let mut acc = zero;
            for c in 0..m {
                acc += q[(i, k + 1 + c)] * v[c];
            }
            let s = acc * tau;
            for c in 0..m {
                q[(i, k + 1 + c)] -= s * v[c].conj();
            }
        }
    }

    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)]).collect();
    (diag, off, q)
}

/// Implicit QL on a real symmetric tridiagonal matrix. `e[i]` couples rows i and i+1;
/// `z` (row-major n×n) accumulates the rotations.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    e[n - 1] = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 200 {
                    return Err(Error::Input(
                        "tridiagonal QL iteration failed to converge".into(),
                    ));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zk = &mut z[k * n..(k + 1) * n];
                        h = zk[i + 1];
                        zk[i + 1] = s * zk[i] + c * h;
                        zk[i] = c * zk[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rng::random_psd;

    fn residual_ok(a: &CMatrix, r: &HermEigResult) {
        let n = a.rows();
        let scale = a.frobenius_norm().max(1e-300);
        for k in 0..n {
            let v = r.vectors.column(k);
            let av = a.matvec(&v);
            let res: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - y * r.values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-9 * scale, "column {k} residual {res}");
        }
        assert!(r.vectors.unitarity_defect() <= 1e-10);
        assert!(r.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input() {
        let a = CMatrix::diag_real(&[2.0, 1.0]);
        let r = herm_eig(&a).unwrap();
        assert_eq!(r.values, vec![1.0, 2.0]);
        assert!((r.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((r.vectors[(0, 1)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_input() {
        let r = herm_eig(&CMatrix::identity(3)).unwrap();
        assert_eq!(r.values, vec![1.0, 1.0, 1.0]);
        assert!(r.vectors.unitarity_defect() < 1e-15);
    }

    #[test]
    fn swap_matrix() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = herm_eig(&a).unwrap();
        assert!((r.values[0] + 1.0).abs() < 1e-15);
        assert!((r.values[1] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Up to phase: |<v, expected>| = 1.
        let v0 = r.vectors.column(0);
        let ov0 = (v0[0] * s - v0[1] * s).norm();
        let v1 = r.vectors.column(1);
        let ov1 = (v1[0] * s + v1[1] * s).norm();
        assert!((ov0 - 1.0).abs() < 1e-14 && (ov1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_square_and_nan() {
        assert!(matches!(
            herm_eig(&CMatrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
        let mut a = CMatrix::identity(2);
        a[(0, 1)] = C64::new(f64::INFINITY, 0.0);
        assert!(matches!(herm_eig(&a), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn complex_hermitian_residuals() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (16, 4), (33, 5)] {
            let a = random_psd(n, seed);
            let r = herm_eig(&a).unwrap();
            residual_ok(&a, &r);
            assert!(r.reconstruct().max_diff(&a) <= 1e-10 * a.frobenius_norm());
        }
    }

    #[test]
    fn degenerate_spectrum_stays_orthonormal() {
        // Rank-one update of the identity: one simple and an (n-1)-fold eigenvalue.
        let n = 9;
        let u: Vec<C64> = (0..n).map(|i| C64::new(1.0, i as f64 * 0.1)).collect();
        let a = &CMatrix::identity(n) + &CMatrix::from_fn(n, n, |i, j| u[i] * u[j].conj());
        let r = herm_eig(&a).unwrap();
        residual_ok(&a, &r);
        assert!(r.values[..n - 1].iter().all(|&x| (x - 1.0).abs() < 1e-12));
    }
}
