use std::collections::VecDeque;

use indexmap::IndexSet;

use super::action::GroupAction;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::numkernel::{CMatrix, C64};

/// Default element cap for [`closure_enumerate`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Partition of `{0..M-1}²` into orbits of `(i, j) ↦ (g·i, g·j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOrbitPartition {
    degree: usize,
    labels: Vec<usize>,
    count: usize,
}

impl PairOrbitPartition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of orbits.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Orbit label of `(i, j)`; labels follow first row-major appearance.
    pub fn label(&self, i: usize, j: usize) -> usize {
        self.labels[i * self.degree + j]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count];
        for &l in &self.labels {
            s[l] += 1;
        }
        s
    }

    /// Replaces each entry by the mean over its orbit.
    pub fn average(&self, r: &CMatrix) -> CMatrix {
        let mut sum = vec![C64::new(0.0, 0.0); self.count];
        for (k, &l) in self.labels.iter().enumerate() {
            sum[l] += r.as_slice()[k];
        }
        let sizes = self.sizes();
        for (s, &n) in sum.iter_mut().zip(&sizes) {
            *s /= n as f64;
        }
        CMatrix::from_fn(self.degree, self.degree, |i, j| sum[self.label(i, j)])
    }
}

/// Pair orbits of the diagonal action on index pairs.
pub fn pair_orbits(g: &GroupAction) -> PairOrbitPartition {
    let m = g.degree();
    let unset = usize::MAX;
    let mut labels = vec![unset; m * m];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..m * m {
        if labels[start] != unset {
            continue;
        }
        labels[start] = count;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k / m, k % m);
            for p in g.generators() {
                let t = p.image(i) * m + p.image(j);
                if labels[t] == unset {
                    labels[t] = count;
                    queue.push_back(t);
                }
            }
        }
        count += 1;
    }
    PairOrbitPartition {
        degree: m,
        labels,
        count,
    }
}

fn check_action_dims(r: &CMatrix, g: &GroupAction) -> Result<()> {
    let m = r.require_square()?;
    if m != g.degree() {
        return Err(Error::Dimension(format!(
            "matrix is {m}x{m} but the group acts on {} points",
            g.degree()
        )));
    }
    Ok(())
}

/// Group average `(1/|G|) Σ_g P_g R P_gᵀ`, computed as the mean over pair orbits.
pub fn reynolds_project(r: &CMatrix, g: &GroupAction) -> Result<CMatrix> {
    check_action_dims(r, g)?;
    r.check_finite()?;
    Ok(pair_orbits(g).average(r))
}

/// `‖[P, R]‖_F` without forming `P`.
pub fn permutation_commutator_norm(p: &Permutation, r: &CMatrix) -> f64 {
    let m = r.rows();
    let inv = p.inverse();
    let mut acc = 0.0;
    for a in 0..m {
        for b in 0..m {
            // (PR)[a,b] = R[p⁻¹a, b], (RP)[a,b] = R[a, p b]
            acc += (r[(inv.image(a), b)] - r[(a, p.image(b))]).norm_sqr();
        }
    }
    acc.sqrt()
}

/// True when every generator satisfies `‖[P_g, R]‖_F ≤ tol·‖R‖_F`.
pub fn is_invariant(r: &CMatrix, g: &GroupAction, tol: f64) -> Result<bool> {
    check_action_dims(r, g)?;
    let scale = r.frobenius_norm();
    Ok(g
        .generators()
        .iter()
        .all(|p| permutation_commutator_norm(p, r) <= tol * scale))
}

/// Outcome of [`closure_enumerate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Closure {
    /// Every element, identity first, in breadth-first order.
    Complete(Vec<Permutation>),
    /// The cap was exceeded after `reached` distinct elements.
    Overflow { reached: usize },
}

impl Closure {
    pub fn order(&self) -> Option<usize> {
        match self {
            Closure::Complete(v) => Some(v.len()),
            Closure::Overflow { .. } => None,
        }
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        match self {
            Closure::Complete(v) => Some(v),
            Closure::Overflow { .. } => None,
        }
    }

    pub fn into_result(self) -> Result<Vec<Permutation>> {
        match self {
            Closure::Complete(v) => Ok(v),
            Closure::Overflow { reached } => Err(Error::Size(format!(
                "closure exceeded the enumeration cap after {reached} elements"
            ))),
        }
    }
}

// Compact keys: one byte per point when the degree allows it.
fn encode(images: &[usize], wide: bool) -> Box<[u8]> {
    if wide {
        images
            .iter()
            .flat_map(|&x| (x as u16).to_le_bytes())
            .collect()
    } else {
        images.iter().map(|&x| x as u8).collect()
    }
}

fn decode(key: &[u8], wide: bool) -> Vec<usize> {
    if wide {
        key.chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]) as usize)
            .collect()
    } else {
        key.iter().map(|&x| x as usize).collect()
    }
}

/// Breadth-first closure of the generators, stopping once more than `cap`
/// distinct elements have been found.
pub fn closure_enumerate(g: &GroupAction, cap: usize) -> Closure {
    let m = g.degree();
    let wide = m > 256;
    let gens: Vec<&[usize]> = g.generators().iter().map(|p| p.images()).collect();
    let mut set: IndexSet<Box<[u8]>> = IndexSet::new();
    set.insert(encode(&(0..m).collect::<Vec<_>>(), wide));
    let mut next = 0;
    let mut buf = vec![0usize; m];
    while next < set.len() {
        let x = decode(&set[next], wide);
        next += 1;
        for gen in &gens {
            for (slot, &xi) in buf.iter_mut().zip(&x) {
                *slot = gen[xi];
            }
            if set.insert(encode(&buf, wide)) && set.len() > cap {
                return Closure::Overflow { reached: set.len() };
            }
        }
    }
    Closure::Complete(
        set.iter()
            .map(|k| Permutation::new(decode(k, wide)).expect("closure element"))
            .collect(),
    )
}
