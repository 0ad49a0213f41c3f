use crate::error::{Error, Result};
use crate::groups::Permutation;
use crate::numkernel::{herm_eigvals, CMatrix, C64};

/// Family of a candidate basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// All `M²` matrix units `E_ab`.
    MatrixUnits,
    /// Powers of the cyclic shift.
    CyclicShifts,
    Custom,
}

/// Linearly independent `M×M` matrices spanning the search space.
#[derive(Debug, Clone)]
pub struct CandidateBasis {
    kind: BasisKind,
    size: usize,
    matrices: Vec<CMatrix>,
}

impl CandidateBasis {
    /// `E_ab` in row-major order of `(a, b)`.
    pub fn matrix_units(m: usize) -> Self {
        let matrices = (0..m * m)
            .map(|k| {
                let mut e = CMatrix::zeros(m, m);
                e[(k / m, k % m)] = C64::new(1.0, 0.0);
                e
            })
            .collect();
        Self {
            kind: BasisKind::MatrixUnits,
            size: m,
            matrices,
        }
    }

    /// `P_τ^k` for `k = 0..M−1`.
    pub fn cyclic_shifts(m: usize) -> Self {
        let matrices = (0..m)
            .map(|k| {
                Permutation::new((0..m).map(|j| (j + k) % m).collect())
                    .expect("shift")
                    .to_matrix()
            })
            .collect();
        Self {
            kind: BasisKind::CyclicShifts,
            size: m,
            matrices,
        }
    }

    pub fn of_kind(kind: BasisKind, m: usize) -> Result<Self> {
        match kind {
            BasisKind::MatrixUnits => Ok(Self::matrix_units(m)),
            BasisKind::CyclicShifts => Ok(Self::cyclic_shifts(m)),
            BasisKind::Custom => Err(Error::Input(
                "a custom basis needs explicit matrices".into(),
            )),
        }
    }

    /// Checks shapes and that the Gram matrix is positive definite.
    pub fn custom(matrices: Vec<CMatrix>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::Basis("empty basis".into()))?;
        let m = first.require_square()?;
        if matrices.iter().any(|b| b.rows() != m || b.cols() != m) {
            return Err(Error::Basis("basis matrices differ in size".into()));
        }
        let basis = Self {
            kind: BasisKind::Custom,
            size: m,
            matrices,
        };
        basis.check_gram()?;
        Ok(basis)
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// Matrix side length `M`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `G_ij = ⟨B_i, B_j⟩_F`.
    pub fn gram(&self) -> CMatrix {
        let d = self.len();
        CMatrix::from_fn(d, d, |i, j| self.matrices[i].frob_inner(&self.matrices[j]))
    }

    pub(crate) fn check_gram(&self) -> Result<()> {
        let g = self.gram();
        let vals = herm_eigvals(&g)?;
        let smallest = vals[0];
        if smallest <= 1e-10 * g.max_abs() {
            return Err(Error::Basis(format!(
                "Gram matrix is not positive definite (smallest eigenvalue {smallest:.3e})"
            )));
        }
        Ok(())
    }
}
