use std::f64::consts::PI;

use super::unitary::{ColumnLabel, UnitaryTransform};
use crate::diagnostics::{
    eigen_clusters, multiplicity_free_probe, sample_invariant_cov, subspace_match,
    DEFAULT_CLUSTER_TOL,
};
use crate::error::{Error, Result};
use crate::groups::{GroupAction, GroupKind};
use crate::numkernel::{herm_eig, random_psd, CMatrix, C64};

/// Cross-seed agreement required of a synthesized basis.
pub const SYNTH_MATCH_TOL: f64 = 1e-8;
/// Resampling budget for [`synthesize_matched`].
pub const SYNTH_ATTEMPTS: usize = 5;

/// Output of [`synthesize_matched`].
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub transform: UnitaryTransform,
    /// Eigenspace dimensions, ascending.
    pub degeneracy_pattern: Vec<usize>,
    /// Cross-seed subspace match achieved by the accepted sample.
    pub seed_match: f64,
    /// True when the basis depends on the sample (trivial action: the KLT).
    pub data_dependent: bool,
    pub attempts: usize,
}

fn derived_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(k + 1))
}

fn clustered_basis(r: &CMatrix, group_name: &str) -> Result<(UnitaryTransform, Vec<usize>)> {
    let eig = herm_eig(r)?;
    let clusters = eigen_clusters(&eig.values, DEFAULT_CLUSTER_TOL)?;
    let mut labels = Vec::with_capacity(eig.values.len());
    for (ci, c) in clusters.clusters().iter().enumerate() {
        for index in 0..c.indices.len() {
            labels.push(ColumnLabel::Cluster { cluster: ci, index });
        }
    }
    let mut pattern = clusters.sizes();
    pattern.sort_unstable();
    Ok((
        UnitaryTransform::new(eig.vectors, group_name, labels)?,
        pattern,
    ))
}

/// Matched basis of a multiplicity-free action, read off the eigenvectors of a
/// seeded invariant covariance and certified against a second seed.
///
/// The trivial action has no data-independent basis and is not
/// multiplicity-free for `M > 1`; it returns the KLT of `random_psd(M, seed)`
/// with `data_dependent` set instead of failing the probe.
pub fn synthesize_matched(g: &GroupAction, seed: u64) -> Result<Synthesis> {
    if g.is_trivial() {
        let (transform, degeneracy_pattern) =
            clustered_basis(&random_psd(g.degree(), seed), g.name())?;
        return Ok(Synthesis {
            transform,
            degeneracy_pattern,
            seed_match: 1.0,
            data_dependent: true,
            attempts: 1,
        });
    }
    if !multiplicity_free_probe(g, (derived_seed(seed, 100), derived_seed(seed, 101))) {
        return Err(Error::NotMultiplicityFree(g.name().to_string()));
    }
    let mut best = 0.0f64;
    for attempt in 0..SYNTH_ATTEMPTS as u64 {
        let r1 = sample_invariant_cov(g, derived_seed(seed, 2 * attempt));
        let r2 = sample_invariant_cov(g, derived_seed(seed, 2 * attempt + 1));
        let (transform, degeneracy_pattern) = clustered_basis(&r1, g.name())?;
        match subspace_match(&r2, &transform, DEFAULT_CLUSTER_TOL) {
            Ok(report) if report.min_match >= 1.0 - SYNTH_MATCH_TOL => {
                return Ok(Synthesis {
                    transform,
                    degeneracy_pattern,
                    seed_match: report.min_match,
                    data_dependent: false,
                    attempts: attempt as usize + 1,
                });
            }
            Ok(report) => best = best.max(report.min_match),
            Err(Error::StructuralMismatch { .. } | Error::DegeneracyMismatch { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateSample {
        attempts: SYNTH_ATTEMPTS,
        best_match: best,
    })
}

/// Characters of an abelian action listed element by element.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    /// `values[(k, g)] = χ_k(g)`.
    pub values: CMatrix,
    /// `g·0` for each element `g`, in the same order as the columns of `values`.
    pub base_orbit: Vec<usize>,
}

impl CharacterTable {
    /// Built-in tables: `χ_k(j) = e^{2πijk/M}` for cyclic actions and
    /// `χ_k(j) = (−1)^{⟨k,j⟩}` for boolean actions (element `j` sends 0 to `j`).
    pub fn for_group(g: &GroupAction) -> Result<Self> {
        let m = g.degree();
        let values = match g.kind() {
            GroupKind::Cyclic => CMatrix::from_fn(m, m, |k, j| {
                C64::from_polar(1.0, 2.0 * PI * ((j * k) % m) as f64 / m as f64)
            }),
            GroupKind::Trivial if m == 1 => CMatrix::identity(1),
            GroupKind::Boolean => CMatrix::from_fn(m, m, |k, j| {
                C64::new(if (j & k).count_ones() % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
            }),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no built-in character table for `{}` (cyclic and boolean actions only)",
                    g.name()
                )))
            }
        };
        Ok(Self {
            values,
            base_orbit: (0..m).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.values.cols()
    }
}

/// Column `k = (1/√|G|) Σ_g conj(χ_k(g)) e_{g·0}`, the normalized central
/// projection of `e_0`. This is the complex conjugate of the DFT convention.
pub fn central_projection_basis(g: &GroupAction, table: &CharacterTable) -> Result<UnitaryTransform> {
    let m = g.degree();
    if table.order() != m || table.values.rows() != m || table.base_orbit.len() != m {
        return Err(Error::Dimension(format!(
            "character table of order {} for an action of degree {m}",
            table.order()
        )));
    }
    let s = 1.0 / (m as f64).sqrt();
    let mut u = CMatrix::zeros(m, m);
    for k in 0..m {
        for (gi, &point) in table.base_orbit.iter().enumerate() {
            u[(point, k)] += table.values[(k, gi)].conj() * s;
        }
    }
    UnitaryTransform::new(u, g.name(), (0..m).map(ColumnLabel::Character).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::subspace_match;
    use crate::groups::*;
    use crate::transforms::classical::{dft_matrix, wht_matrix};

    #[test]
    fn cyclic_synthesis_matches_dft() {
        let g = make_cyclic(8).unwrap();
        let s = synthesize_matched(&g, 3).unwrap();
        assert!(!s.data_dependent);
        let r = sample_invariant_cov(&g, 77);
        let rep = subspace_match(&r, &dft_matrix(8).unwrap(), DEFAULT_CLUSTER_TOL).unwrap();
        assert!(rep.min_match >= 1.0 - 1e-9);
        let rep = subspace_match(&r, &s.transform, DEFAULT_CLUSTER_TOL).unwrap();
        assert!(rep.min_match >= 1.0 - 1e-9);
    }

    #[test]
    fn wreath_degeneracies() {
        let s = synthesize_matched(&make_dyadic_wreath(4).unwrap(), 1).unwrap();
        assert_eq!(s.degeneracy_pattern, vec![1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial_action_gives_klt() {
        let s = synthesize_matched(&make_trivial(4), 9).unwrap();
        assert!(s.data_dependent);
        assert_eq!(s.degeneracy_pattern, vec![1, 1, 1, 1]);
    }

    #[test]
    fn non_multiplicity_free_is_rejected() {
        let g = make_product(&make_trivial(2), &make_cyclic(2).unwrap()).unwrap();
        assert!(matches!(
            synthesize_matched(&g, 1),
            Err(Error::NotMultiplicityFree(_))
        ));
    }

    #[test]
    fn central_projection_tables() {
        let c4 = make_cyclic(4).unwrap();
        let u = central_projection_basis(&c4, &CharacterTable::for_group(&c4).unwrap()).unwrap();
        let d = dft_matrix(4).unwrap();
        assert!(u.matrix().max_diff(&d.matrix().map(|z| z.conj())) < 1e-15);
        let b2 = make_boolean(2).unwrap();
        let w = central_projection_basis(&b2, &CharacterTable::for_group(&b2).unwrap()).unwrap();
        assert!(w.matrix().max_diff(wht_matrix(2).unwrap().matrix()) < 1e-15);
        let c1 = make_cyclic(1).unwrap();
        let one = central_projection_basis(&c1, &CharacterTable::for_group(&c1).unwrap()).unwrap();
        assert_eq!(one.matrix(), &CMatrix::identity(1));
        assert!(matches!(
            CharacterTable::for_group(&make_dihedral(3).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }
}
