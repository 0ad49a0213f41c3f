use super::cmatrix::{CMatrix, C64};
use super::eigen::{herm_eig, herm_eigvals};
use crate::error::{Error, Result};

/// Kronecker product: `out[i·rB + k, j·cB + l] = A[i,j]·B[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (rb, cb) = (b.rows(), b.cols());
    CMatrix::from_fn(a.rows() * rb, a.cols() * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Singular values in descending order (one-sided Jacobi).
pub fn svd_singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Err(Error::Dimension("singular values of an empty matrix".into()));
    }
    a.check_finite()?;
    // Work on whichever orientation has no more columns than rows.
    let work = if a.cols() > a.rows() { a.adjoint() } else { a.clone() };
    let (m, n) = (work.rows(), work.cols());
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| work.column(j)).collect();

    let eps = f64::EPSILON;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let x = cols[p][i];
                    let y = cols[q][i] * phase.conj();
                    cols[p][i] = x * c - y * s;
                    cols[q][i] = (x * s + y * c) * phase;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Lower-triangular Cholesky factor `L` with `L L* = G`.
pub fn cholesky(g: &CMatrix) -> Result<CMatrix> {
    let n = g.require_square()?;
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = g[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::IllConditionedMetric { smallest: d });
        }
        let djj = d.sqrt();
        l[(j, j)] = C64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower-triangular `L`.
fn forward_solve(l: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = l.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Solves `L* X = B` for lower-triangular `L`.
fn backward_solve_adjoint(l: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = l.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for k in i + 1..n {
                s -= l[(k, i)].conj() * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)].re;
        }
    }
    x
}

/// Full solution of `M c = λ G c`; columns of `vectors` satisfy `c* G c = 1`.
#[derive(Debug, Clone)]
pub struct GevpSolution {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Hermitian-definite generalized eigenproblem, reduced through the Cholesky
/// factor of `G` to a standard Hermitian problem.
pub fn gevp(m: &CMatrix, g: &CMatrix) -> Result<GevpSolution> {
    let n = m.require_square()?;
    if g.require_square()? != n {
        return Err(Error::Dimension(format!(
            "M is {n}x{n} but G is {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let m = m.symmetrized(1e-8)?;
    let g = g.symmetrized(1e-8)?;
    let gvals = herm_eigvals(&g)?;
    let smallest = gvals.first().copied().unwrap_or(0.0);
    if smallest <= 1e-12 * g.max_abs() {
        return Err(Error::IllConditionedMetric { smallest });
    }
    let l = cholesky(&g)?;
    let y = forward_solve(&l, &m);
    let c = forward_solve(&l, &y.adjoint());
    let eig = herm_eig(&c)?;
    let vectors = backward_solve_adjoint(&l, &eig.vectors);
    Ok(GevpSolution {
        values: eig.values,
        vectors,
    })
}

/// Smallest generalized eigenvalue and its `G`-normalized eigenvector.
pub fn gevp_min(m: &CMatrix, g: &CMatrix) -> Result<(f64, Vec<C64>)> {
    let sol = gevp(m, g)?;
    Ok((sol.values[0], sol.vectors.column(0)))
}
