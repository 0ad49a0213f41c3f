use super::basis::CandidateBasis;
use crate::error::{Error, Result};
use crate::groups::Permutation;
use crate::numkernel::{gevp, herm_eig, hungarian_max, CMatrix, ScoreMatrix, C64};

/// Relative size below which a Gram eigenvalue counts as a dependent direction.
const GRAM_REL_CUTOFF: f64 = 1e-10;

/// `[R, [R, B]] = R²B − 2RBR + BR²`.
pub fn double_commutator(r: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let m = r.require_square()?;
    if b.rows() != m || b.cols() != m {
        return Err(Error::Input(format!(
            "B is {}x{} but R is {m}x{m}",
            b.rows(),
            b.cols()
        )));
    }
    r.commutator(&r.commutator(b)?)
}

/// `M_ij = ⟨[R,B_i],[R,B_j]⟩_F` and `G_ij = ⟨B_i,B_j⟩_F`.
///
/// For Hermitian `R`, `M_ij = tr(B_i* [R,[R,B_j]])`.
pub fn build_gevp(r: &CMatrix, basis: &CandidateBasis) -> Result<(CMatrix, CMatrix)> {
    let m = r.require_square()?;
    if basis.size() != m {
        return Err(Error::Dimension(format!(
            "basis of {}x{} matrices for a {m}x{m} covariance",
            basis.size(),
            basis.size()
        )));
    }
    let r = r.symmetrized(1e-8)?;
    basis.check_gram()?;
    let comms = basis
        .matrices()
        .iter()
        .map(|b| r.commutator(b))
        .collect::<Result<Vec<_>>>()?;
    let d = basis.len();
    let mm = CMatrix::from_fn(d, d, |i, j| comms[i].frob_inner(&comms[j]));
    Ok((mm, basis.gram()))
}

/// Orthonormal (Frobenius) basis of a growing span of matrices, stored flat.
#[derive(Debug, Clone, Default)]
pub struct DeflationSpace {
    vectors: Vec<Vec<C64>>,
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl DeflationSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `x` to the span; returns false when it was already (numerically) inside.
    pub fn add(&mut self, x: &CMatrix) -> bool {
        let scale = x.frobenius_norm();
        if scale == 0.0 {
            return false;
        }
        let mut v = x.as_slice().to_vec();
        for _ in 0..2 {
            for q in &self.vectors {
                let p = inner(q, &v);
                for (a, b) in v.iter_mut().zip(q) {
                    *a -= p * b;
                }
            }
        }
        let n = norm(&v);
        if n <= 1e-8 * scale {
            return false;
        }
        v.iter_mut().for_each(|z| *z /= n);
        self.vectors.push(v);
        true
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn project_out(&self, v: &mut [C64]) {
        for _ in 0..2 {
            for q in &self.vectors {
                let p = inner(q, v);
                for (a, b) in v.iter_mut().zip(q) {
                    *a -= p * b;
                }
            }
        }
    }
}

/// Result of one deflated double-commutator GEVP.
#[derive(Debug, Clone)]
pub struct GevpStep {
    /// Smallest generalized eigenvalue, `‖[R,A]‖_F²` for the returned unit-norm `A`.
    pub lambda: f64,
    /// `A = Σ c_k B'_k` over the projected basis.
    pub candidate: CMatrix,
    /// `c`, normalized so that `c* G' c = 1` for the projected Gram `G'`.
    pub coefficients: Vec<C64>,
    /// Full ascending spectrum of the reduced problem.
    pub values: Vec<f64>,
    projected: Vec<CMatrix>,
    vectors: CMatrix,
}

impl GevpStep {
    /// Matrix of the `k`-th generalized eigenvector.
    pub fn direction(&self, k: usize) -> CMatrix {
        combine(&self.projected, &self.vectors.column(k))
    }

    /// Directions whose eigenvalue is at most `cut`.
    pub fn directions_below(&self, cut: f64) -> Vec<CMatrix> {
        self.values
            .iter()
            .take_while(|&&v| v <= cut)
            .enumerate()
            .map(|(k, _)| self.direction(k))
            .collect()
    }

    /// The projected basis `B'`.
    pub fn projected_basis(&self) -> &[CMatrix] {
        &self.projected
    }
}

fn combine(mats: &[CMatrix], c: &[C64]) -> CMatrix {
    let (r, cc) = (mats[0].rows(), mats[0].cols());
    let mut out = CMatrix::zeros(r, cc);
    for (b, &w) in mats.iter().zip(c) {
        if w == C64::new(0.0, 0.0) {
            continue;
        }
        for (o, x) in out.as_mut_slice().iter_mut().zip(b.as_slice()) {
            *o += w * x;
        }
    }
    out
}

/// Smallest double-commutator eigen-direction in the part of the basis span
/// Frobenius-orthogonal to `deflation`.
pub fn dc_gevp_step(r: &CMatrix, basis: &CandidateBasis, deflation: &[CMatrix]) -> Result<GevpStep> {
    let mut space = DeflationSpace::new();
    for d in deflation {
        space.add(d);
    }
    dc_gevp_step_in(r, basis, &space)
}

/// [`dc_gevp_step`] against a prebuilt deflation space.
pub fn dc_gevp_step_in(r: &CMatrix, basis: &CandidateBasis, space: &DeflationSpace) -> Result<GevpStep> {
    let m = r.require_square()?;
    if basis.size() != m {
        return Err(Error::Dimension(format!(
            "basis of {}x{} matrices for a {m}x{m} covariance",
            basis.size(),
            basis.size()
        )));
    }
    let r = r.symmetrized(1e-8)?;
    let projected: Vec<CMatrix> = basis
        .matrices()
        .iter()
        .map(|b| {
            let mut v = b.as_slice().to_vec();
            space.project_out(&mut v);
            CMatrix::from_vec(m, m, v).expect("finite")
        })
        .collect();
    let d = projected.len();
    let gram = CMatrix::from_fn(d, d, |i, j| projected[i].frob_inner(&projected[j]));
    let geig = herm_eig(&gram)?;
    // Cutoff scaled by the unprojected basis.
    let reference = basis
        .matrices()
        .iter()
        .map(|b| b.frobenius_norm().powi(2))
        .fold(0.0f64, f64::max);
    let keep: Vec<usize> = (0..d)
        .filter(|&k| geig.values[k] > GRAM_REL_CUTOFF * reference)
        .collect();
    if keep.is_empty() {
        return Err(Error::SearchExhausted);
    }
    let v = geig.vectors.select_columns(&keep);
    // Orthogonal directions W_i = Σ_k V[k,i] B'_k with ⟨W_i, W_j⟩ = μ_i δ_ij.
    let w: Vec<CMatrix> = (0..keep.len()).map(|i| combine(&projected, &v.column(i))).collect();
    let comms = w
        .iter()
        .map(|x| r.commutator(x))
        .collect::<Result<Vec<_>>>()?;
    let n = w.len();
    let mr = CMatrix::from_fn(n, n, |i, j| comms[i].frob_inner(&comms[j]));
    let gr = CMatrix::diag_real(&keep.iter().map(|&k| geig.values[k]).collect::<Vec<_>>());
    let sol = gevp(&mr, &gr)?;
    let vectors = v.matmul(&sol.vectors)?;
    let coefficients = vectors.column(0);
    let candidate = combine(&projected, &coefficients);
    Ok(GevpStep {
        lambda: sol.values[0],
        candidate,
        coefficients,
        values: sol.values,
        projected,
        vectors,
    })
}

/// Permutation maximizing `Re tr(Pᵀ A)`.
pub fn round_to_permutation(a: &CMatrix) -> Result<Permutation> {
    let n = a.require_square()?;
    a.check_finite()?;
    Ok(hungarian_max(&ScoreMatrix::from_fn(n, |i, j| a[(i, j)].re)))
}

/// Rotates `A` so its largest-magnitude entry is real and positive.
pub fn phase_normalize(a: &CMatrix) -> CMatrix {
    let pivot = a
        .as_slice()
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(C64::new(0.0, 0.0));
    if pivot.norm() == 0.0 {
        return a.clone();
    }
    a.scale(pivot.conj() / pivot.norm())
}
