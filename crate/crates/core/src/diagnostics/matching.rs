use super::clusters::{eigen_clusters, ClusterSet};
use super::covariance::sample_invariant_cov;
use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::numkernel::{herm_eig, svd_singular_values, CMatrix, GaussianStream, C64};
use crate::transforms::{real_fourier_matrix, UnitaryTransform};

/// Per-eigenspace agreement between a covariance and a predicted basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    /// Smallest singular value of `Q_e* Q_p` per cluster.
    pub per_cluster_match: Vec<f64>,
    pub min_match: f64,
    /// Cluster dimensions.
    pub degeneracy_pattern: Vec<usize>,
    /// Mean eigenvalue of each cluster.
    pub cluster_means: Vec<f64>,
}

/// Orthonormalizes columns by two passes of modified Gram-Schmidt.
fn orthonormalize(cols: &mut [Vec<C64>]) {
    for _ in 0..2 {
        for j in 0..cols.len() {
            let (done, rest) = cols.split_at_mut(j);
            let v = &mut rest[0];
            for q in done.iter() {
                let proj: C64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                for x in v.iter_mut() {
                    *x /= norm;
                }
            }
        }
    }
}

fn rayleigh(r: &CMatrix, v: &[C64]) -> f64 {
    let rv = r.matvec(v);
    let num: C64 = v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    num.re / den
}

/// Compares the eigenspaces of `r` with the columns of a predicted unitary.
///
/// Each predicted column is assigned to the eigenvalue cluster containing its
/// Rayleigh quotient. Clusters are reported in order of their first predicted
/// column.
pub fn subspace_match(r: &CMatrix, predicted: &UnitaryTransform, rel_tol: f64) -> Result<MatchReport> {
    subspace_match_columns(r, predicted.matrix(), rel_tol)
}

/// [`subspace_match`] for a bare square matrix of predicted columns.
pub fn subspace_match_columns(r: &CMatrix, predicted: &CMatrix, rel_tol: f64) -> Result<MatchReport> {
    let m = r.require_square()?;
    if predicted.rows() != m || predicted.cols() != m {
        return Err(Error::Dimension(format!(
            "predicted basis is {}x{} for a {m}x{m} covariance",
            predicted.rows(),
            predicted.cols()
        )));
    }
    let eig = herm_eig(r)?;
    let clusters: ClusterSet = eigen_clusters(&eig.values, rel_tol)?;
    let scale = eig
        .values
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let slack = clusters.tolerance() + 1e-10 * scale;

    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); clusters.len()];
    let mut order: Vec<usize> = Vec::new();
    for col in 0..m {
        let q = rayleigh(r, &predicted.column(col));
        let c = clusters
            .locate(q, slack)
            .ok_or(Error::StructuralMismatch { column: col, value: q })?;
        if assigned[c].is_empty() {
            order.push(c);
        }
        assigned[c].push(col);
    }
    for (ci, cluster) in clusters.clusters().iter().enumerate() {
        if assigned[ci].len() != cluster.indices.len() {
            return Err(Error::DegeneracyMismatch {
                cluster: ci,
                empirical: cluster.indices.len(),
                predicted: assigned[ci].len(),
            });
        }
    }

    let mut per_cluster_match = Vec::with_capacity(order.len());
    let mut degeneracy_pattern = Vec::with_capacity(order.len());
    let mut cluster_means = Vec::with_capacity(order.len());
    for &ci in &order {
        let cluster = &clusters.clusters()[ci];
        let qe = eig.vectors.select_columns(&cluster.indices);
        let mut cols: Vec<Vec<C64>> = assigned[ci].iter().map(|&j| predicted.column(j)).collect();
        orthonormalize(&mut cols);
        let qp = CMatrix::from_columns(m, &cols);
        let overlap = qe.adjoint().matmul(&qp)?;
        let sv = svd_singular_values(&overlap)?;
        per_cluster_match.push(sv.last().copied().unwrap_or(0.0).min(1.0));
        degeneracy_pattern.push(cluster.indices.len());
        cluster_means.push(cluster.mean);
    }
    let min_match = per_cluster_match.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(MatchReport {
        per_cluster_match,
        min_match,
        degeneracy_pattern,
        cluster_means,
    })
}

/// One-sided commutativity test of the commutant: two independent invariant
/// samples must commute to `1e-9·‖A‖_F‖B‖_F`.
pub fn multiplicity_free_probe(g: &GroupAction, seeds: (u64, u64)) -> bool {
    let a = sample_invariant_cov(g, seeds.0);
    let b = sample_invariant_cov(g, seeds.1);
    let c = a.commutator(&b).expect("same size");
    c.frobenius_norm() <= 1e-9 * a.frobenius_norm() * b.frobenius_norm()
}

/// Real symmetric circulant on `N` points with prescribed separated spectrum:
/// frequency `k` and `N − k` share `λ_k = 1 + (k + u_k/2)/N`, `u_k ∈ [0, 1)`.
pub fn separated_circulant(n: usize, seed: u64) -> Result<CMatrix> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Size(format!("circle check needs even N >= 2, got {n}")));
    }
    let half = n / 2;
    let mut rng = GaussianStream::new(seed);
    let lambda: Vec<f64> = (0..=half)
        .map(|k| 1.0 + (k as f64 + 0.5 * rng.uniform()) / n as f64)
        .collect();
    let row: Vec<f64> = (0..n)
        .map(|d| {
            (0..n)
                .map(|k| {
                    let kk = if k <= half { k } else { n - k };
                    lambda[kk] * (2.0 * std::f64::consts::PI * ((d * k) % n) as f64 / n as f64).cos()
                })
                .sum::<f64>()
                / n as f64
        })
        .collect();
    Ok(CMatrix::from_fn(n, n, |a, b| {
        C64::new(row[(b + n - a) % n], 0.0)
    }))
}

/// Degeneracy and Fourier-basis match of a separated real circulant.
pub fn circle_check(n: usize, seed: u64) -> Result<MatchReport> {
    let r = separated_circulant(n, seed)?;
    subspace_match(&r, &real_fourier_matrix(n)?, super::DEFAULT_CLUSTER_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::*;
    use crate::numkernel::{random_psd, GaussianStream};
    use crate::transforms::*;

    #[test]
    fn self_match_is_one() {
        let r = random_psd(6, 4);
        let v = herm_eig(&r).unwrap().vectors;
        let rep = subspace_match_columns(&r, &v, 1e-6).unwrap();
        assert!((rep.min_match - 1.0).abs() < 1e-12);
        assert_eq!(rep.degeneracy_pattern, vec![1; 6]);
    }

    #[test]
    fn haar_pattern_at_depth_five() {
        let g = make_dyadic_wreath(5).unwrap();
        let r = sample_invariant_cov(&g, 11);
        let rep = subspace_match(&r, &haar_matrix(5).unwrap(), 1e-6).unwrap();
        assert_eq!(rep.degeneracy_pattern, vec![1, 1, 2, 4, 8, 16]);
        assert!(rep.min_match >= 1.0 - 1e-6);
    }

    #[test]
    fn wrong_basis_is_structural_mismatch() {
        let r = sample_invariant_cov(&make_cyclic(8).unwrap(), 2);
        let e = subspace_match(&r, &haar_matrix(3).unwrap(), 1e-6).unwrap_err();
        assert!(matches!(e, Error::StructuralMismatch { .. }));
    }

    #[test]
    fn cluster_bookkeeping_errors() {
        let r = CMatrix::diag_real(&[1.0, 1.0, 2.0]);
        assert!(subspace_match_columns(&r, &CMatrix::identity(3), 1e-6).is_ok());
        // Mixing e_1 and e_2 puts both Rayleigh quotients at 1.5, inside the gap.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mixed = CMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, s, s], &[0.0, s, -s]]);
        assert!(matches!(
            subspace_match_columns(&r, &mixed, 1e-6),
            Err(Error::StructuralMismatch { column: 1, .. })
        ));
        let lopsided = CMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 1.0, 1.0]]);
        assert!(matches!(
            subspace_match_columns(&r, &lopsided, 1e-6),
            Err(Error::DegeneracyMismatch { cluster: 0, empirical: 2, predicted: 1 })
        ));
    }

    #[test]
    fn rotation_within_cluster_is_invisible() {
        let g = make_dyadic_wreath(3).unwrap();
        let r = sample_invariant_cov(&g, 5);
        let h = haar_matrix(3).unwrap().into_matrix();
        let base = subspace_match_columns(&r, &h, 1e-6).unwrap().min_match;
        // Scale-3 columns 4..8 form one cluster; rotate them.
        let q = herm_eig(&random_psd(4, 8)).unwrap().vectors;
        let block = h.select_columns(&[4, 5, 6, 7]).matmul(&q).unwrap();
        let mut rotated = h.clone();
        for j in 0..4 {
            rotated.set_column(4 + j, &block.column(j));
        }
        let rot = subspace_match_columns(&r, &rotated, 1e-6).unwrap().min_match;
        assert!((rot - base).abs() <= 1e-9);
        let mut perm = h.clone();
        let mut rng = GaussianStream::new(1);
        for j in (1..8).rev() {
            let k = rng.below(j + 1);
            let (a, b) = (perm.column(j), perm.column(k));
            perm.set_column(j, &b);
            perm.set_column(k, &a);
        }
        let p = subspace_match_columns(&r, &perm, 1e-6).unwrap();
        assert!((p.min_match - base).abs() <= 1e-9);
    }

    #[test]
    fn probe_outcomes() {
        assert!(multiplicity_free_probe(&make_cyclic(8).unwrap(), (1, 2)));
        assert!(multiplicity_free_probe(&make_dyadic_wreath(3).unwrap(), (1, 2)));
        // (0 1) on four points: the trivial irrep appears three times.
        let swap = Permutation::parse("(0 1)", Some(4)).unwrap();
        let g = GroupAction::from_generators(vec![swap], "swap01").unwrap();
        assert_eq!(pair_orbits(&g).count(), 10);
        assert!(!multiplicity_free_probe(&g, (1, 2)));
        let prod = make_product(&make_trivial(2), &make_cyclic(2).unwrap()).unwrap();
        assert_eq!(pair_orbits(&prod).count(), 8);
        assert!(!multiplicity_free_probe(&prod, (1, 2)));
    }

    #[test]
    fn circle_patterns() {
        let rep = circle_check(4, 1).unwrap();
        assert_eq!(rep.degeneracy_pattern, vec![1, 2, 1]);
        let rep = circle_check(64, 1).unwrap();
        let mut want = vec![1];
        want.extend(std::iter::repeat(2).take(31));
        want.push(1);
        assert_eq!(rep.degeneracy_pattern, want);
        assert!(rep.min_match >= 1.0 - 1e-6);
        assert!(circle_check(5, 1).is_err());
    }
}
