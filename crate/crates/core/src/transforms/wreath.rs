use std::f64::consts::PI;

use super::classical::dft_matrix;
use super::unitary::{ColumnLabel, UnitaryTransform};
use crate::error::{Error, Result};
use crate::groups::{NodeKind, MAX_COMPOSITE_DEGREE};
use crate::numkernel::{CMatrix, C64};

/// Orthonormal `K×K` basis: the constant column, then Helmert contrasts with
/// column `m ∝ (1,…,1,−m,0,…,0)` (`m` ones).
pub fn helmert_matrix(k: usize) -> Result<CMatrix> {
    if k == 0 {
        return Err(Error::Size("Helmert basis needs K >= 1".into()));
    }
    let mut h = CMatrix::zeros(k, k);
    let c0 = 1.0 / (k as f64).sqrt();
    for j in 0..k {
        h[(j, 0)] = C64::new(c0, 0.0);
    }
    for m in 1..k {
        let norm = ((m * (m + 1)) as f64).sqrt();
        for j in 0..m {
            h[(j, m)] = C64::new(1.0 / norm, 0.0);
        }
        h[(m, m)] = C64::new(-(m as f64) / norm, 0.0);
    }
    Ok(h)
}

fn node_basis(k: usize, kind: NodeKind) -> Result<CMatrix> {
    match kind {
        NodeKind::Cyclic => Ok(dft_matrix(k)?.into_matrix()),
        NodeKind::Symmetric => helmert_matrix(k),
    }
}

/// Matched basis of the iterated wreath product with the same branching list
/// as [`crate::groups::make_wreath`] (first entry directly above the leaves).
///
/// Level by level, `U_d = (I_K ⊗ U_{d−1}) · Π · (I_{M_{d−1}} ⊗ U_node)` where
/// `Π` sends the tensor index `c·K + b` to the block-major leaf index
/// `b·M_{d−1} + c`. Column `c·K + k` is therefore `Σ_b U_node[b,k] e_b ⊗ u_c`:
/// coarse columns (child constant) come first and column 0 is constant.
pub fn wreath_matrix(branching: &[(usize, NodeKind)]) -> Result<UnitaryTransform> {
    if branching.is_empty() {
        return Err(Error::Input("wreath branching is empty".into()));
    }
    branching
        .iter()
        .try_fold(1usize, |acc, &(k, _)| acc.checked_mul(k))
        .filter(|&d| d <= MAX_COMPOSITE_DEGREE)
        .ok_or_else(|| Error::Size(format!("wreath degree exceeds {MAX_COMPOSITE_DEGREE}")))?;

    let mut u = CMatrix::identity(1);
    let mut labels: Vec<Vec<usize>> = vec![Vec::new()];
    let mut name = Vec::new();
    for &(k, kind) in branching {
        if k < 2 {
            return Err(Error::Size(format!("branching factor {k} < 2")));
        }
        let base = node_basis(k, kind)?;
        let m = u.rows();
        let next = CMatrix::from_fn(k * m, k * m, |x, col| {
            let (b, y) = (x / m, x % m);
            let (c, kk) = (col / k, col % k);
            base[(b, kk)] * u[(y, c)]
        });
        labels = labels
            .iter()
            .flat_map(|l| {
                (0..k).map(move |kk| {
                    let mut d = l.clone();
                    d.push(kk);
                    d
                })
            })
            .collect();
        u = next;
        name.push(match kind {
            NodeKind::Cyclic => format!("{k}c"),
            NodeKind::Symmetric => format!("{k}s"),
        });
    }
    UnitaryTransform::new(
        u,
        format!("wreath:{}", name.join(",")),
        labels.into_iter().map(ColumnLabel::Wreath).collect(),
    )
}

/// Two-stage dihedral construction on `2M` points.
///
/// Stage one is the DFT on `Z_{2M}`. Stage two multiplies character `k` by the
/// half-sample phase `e^{iπk/2M}`, which makes the reflection `j ↦ 2M−1−j`
/// exchange the phased characters of `k` and `−k`, and then applies `H₁` to
/// each pair. Columns are cosines `k = 0..M−1` followed by sines `k = 1..M`;
/// all are real. Folding the cosine block with the even-extension isometry
/// reproduces the DCT-II.
pub fn semidirect_dct_cascade(m: usize) -> Result<UnitaryTransform> {
    if m < 2 {
        return Err(Error::Size("cascade needs M >= 2".into()));
    }
    let n = 2 * m;
    let f = dft_matrix(n)?.into_matrix();
    let phase = CMatrix::from_fn(n, n, |a, b| {
        if a == b {
            C64::from_polar(1.0, PI * a as f64 / n as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let i = C64::new(0.0, 1.0);
    let mut h = CMatrix::zeros(n, n);
    let mut labels = Vec::with_capacity(n);
    h[(0, 0)] = C64::new(1.0, 0.0);
    labels.push(ColumnLabel::Cosine(0));
    // Index 2M−k carries the phased character of −k with an extra factor −1.
    for k in 1..m {
        h[(k, k)] = C64::new(r, 0.0);
        h[(n - k, k)] = C64::new(-r, 0.0);
        labels.push(ColumnLabel::Cosine(k));
    }
    for k in 1..m {
        let col = m + k - 1;
        h[(k, col)] = -i * r;
        h[(n - k, col)] = -i * r;
        labels.push(ColumnLabel::Sine(k));
    }
    h[(m, n - 1)] = -i;
    labels.push(ColumnLabel::Sine(m));

    let u = f.matmul(&phase)?.matmul(&h)?;
    UnitaryTransform::new(u, format!("dihedral:{m}"), labels)
}
