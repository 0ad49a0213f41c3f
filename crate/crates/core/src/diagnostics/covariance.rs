use crate::error::{Error, Result};
use crate::groups::{
    make_dihedral, permutation_commutator_norm, reynolds_project, GroupAction, Permutation,
};
use crate::numkernel::{random_psd, random_real_psd, CMatrix};
use crate::transforms::even_extension_isometry;

/// Reynolds projection of `random_psd(M, seed)` onto the commutant of `g`.
pub fn sample_invariant_cov(g: &GroupAction, seed: u64) -> CMatrix {
    reynolds_project(&random_psd(g.degree(), seed), g).expect("degrees agree")
}

/// `δ = ‖P R − R P‖_F / (‖P‖_F ‖R‖_F)`.
pub fn residual_delta(p: &Permutation, r: &CMatrix) -> Result<f64> {
    let m = r.require_square()?;
    if p.degree() != m {
        return Err(Error::Dimension(format!(
            "permutation of degree {} against a {m}x{m} matrix",
            p.degree()
        )));
    }
    let norm = r.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::UndefinedResidual);
    }
    Ok(permutation_commutator_norm(p, r) / ((m as f64).sqrt() * norm))
}

/// `α = 1 − ‖R − P_G(R)‖_F² / ‖R‖_F²`, clamped to `[0, 1]`.
///
/// The trivial group gives `α = 1` because its projection is the identity.
pub fn coloring_alpha(g: &GroupAction, r: &CMatrix) -> Result<f64> {
    let proj = reynolds_project(r, g)?;
    let total = r.frobenius_norm().powi(2);
    if total == 0.0 {
        return Err(Error::UndefinedResidual);
    }
    let lost = (r - &proj).frobenius_norm().powi(2);
    Ok((1.0 - lost / total).clamp(0.0, 1.0))
}

/// Real dihedral-invariant covariance on `2M` points folded to `M` points by
/// the even-extension isometry: `R_x = S* R̃ S`.
pub fn dct_fold_cov(m: usize, seed: u64) -> Result<CMatrix> {
    let g = make_dihedral(m)?;
    let full = reynolds_project(&random_real_psd(2 * m, seed), &g)?;
    let s = even_extension_isometry(m)?;
    s.adjoint().matmul(&full.matmul(&s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::*;
    use crate::numkernel::herm_eigvals;

    #[test]
    fn invariant_samples() {
        let t = make_trivial(4);
        assert_eq!(sample_invariant_cov(&t, 3), random_psd(4, 3));
        let c = sample_invariant_cov(&make_cyclic(6).unwrap(), 2);
        for i in 0..6 {
            for j in 0..6 {
                assert!((c[(i, j)] - c[((i + 1) % 6, (j + 1) % 6)]).norm() < 1e-12);
            }
        }
        let d = make_dihedral(4).unwrap();
        let r = sample_invariant_cov(&d, 5);
        assert!(is_invariant(&r, &d, 1e-12).unwrap());
        assert!(herm_eigvals(&r).unwrap()[0] >= -1e-12);
    }

    #[test]
    fn delta_hand_values() {
        let r = CMatrix::diag_real(&[1.0, 2.0]);
        assert_eq!(residual_delta(&Permutation::identity(2), &r).unwrap(), 0.0);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let d = residual_delta(&swap, &r).unwrap();
        assert!((d - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(residual_delta(&swap, &CMatrix::zeros(2, 2)), Err(Error::UndefinedResidual));
        assert!(residual_delta(&Permutation::identity(3), &r).is_err());
    }

    #[test]
    fn alpha_hand_values() {
        let r = CMatrix::diag_real(&[1.0, 2.0]);
        let swap = make_cyclic(2).unwrap();
        assert!((coloring_alpha(&swap, &r).unwrap() - 0.9).abs() < 1e-15);
        assert_eq!(coloring_alpha(&make_trivial(2), &r).unwrap(), 1.0);
        let inv = sample_invariant_cov(&make_cyclic(5).unwrap(), 1);
        assert!((coloring_alpha(&make_cyclic(5).unwrap(), &inv).unwrap() - 1.0).abs() < 1e-14);
        assert!(coloring_alpha(&swap, &CMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn folded_covariance_is_real_symmetric() {
        let r = dct_fold_cov(8, 4).unwrap();
        assert!(r.is_real(1e-12));
        assert!(r.hermitian_defect() < 1e-12);
        assert!(dct_fold_cov(1, 0).is_err());
    }
}
