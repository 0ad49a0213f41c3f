use std::fmt;

use crate::error::{Error, Result};
use crate::numkernel::CMatrix;

/// Largest tolerated `‖U*U − I‖_max`.
pub const UNITARY_TOL: f64 = 1e-10;

/// What a transform column represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnLabel {
    /// Fourier frequency `k`.
    Frequency(usize),
    /// Haar column; scale 0 is the scaling function.
    ScalePosition { scale: usize, position: usize },
    /// Character index from a character table.
    Character(usize),
    /// Natural binary (Hadamard) index.
    Index(usize),
    /// Column of a Kronecker product.
    Product(Box<ColumnLabel>, Box<ColumnLabel>),
    Cosine(usize),
    Sine(usize),
    /// Per-level digits of a wreath column, leaf level first.
    Wreath(Vec<usize>),
    /// Column `index` of eigenvalue cluster `cluster`.
    Cluster { cluster: usize, index: usize },
}

impl fmt::Display for ColumnLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnLabel::Frequency(k) => write!(f, "k={k}"),
            ColumnLabel::ScalePosition { scale: 0, .. } => write!(f, "scaling"),
            ColumnLabel::ScalePosition { scale, position } => write!(f, "s={scale},p={position}"),
            ColumnLabel::Character(k) => write!(f, "chi{k}"),
            ColumnLabel::Index(j) => write!(f, "{j}"),
            ColumnLabel::Product(a, b) => write!(f, "({a})x({b})"),
            ColumnLabel::Cosine(k) => write!(f, "cos{k}"),
            ColumnLabel::Sine(k) => write!(f, "sin{k}"),
            ColumnLabel::Wreath(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "w[{}]", parts.join(","))
            }
            ColumnLabel::Cluster { cluster, index } => write!(f, "c{cluster}.{index}"),
        }
    }
}

/// A square unitary matrix with per-column metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryTransform {
    matrix: CMatrix,
    group_name: String,
    labels: Vec<ColumnLabel>,
}

impl UnitaryTransform {
    /// Checks shape, label count and unitarity.
    pub fn new(matrix: CMatrix, group_name: impl Into<String>, labels: Vec<ColumnLabel>) -> Result<Self> {
        let n = matrix.require_square()?;
        if labels.len() != n {
            return Err(Error::Dimension(format!(
                "{} column labels for a {n}x{n} transform",
                labels.len()
            )));
        }
        matrix.check_finite()?;
        let defect = matrix.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::Basis(format!(
                "matrix is not unitary (defect {defect:.3e})"
            )));
        }
        Ok(Self {
            matrix,
            group_name: group_name.into(),
            labels,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn labels(&self) -> &[ColumnLabel] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// `U* R U`.
    pub fn conjugate(&self, r: &CMatrix) -> Result<CMatrix> {
        self.matrix.adjoint().matmul(&r.matmul(&self.matrix)?)
    }
}
