//! Exact completion of a discovered subgroup.
//!
//! Deflating against the closure can consume the whole commutant before the
//! matched group is reached, because a proper subgroup may already span it.
//! This pass walks a stabilizer chain of the known subgroup and backtracks
//! over anchored point maps for a symmetry outside it.

use std::collections::HashSet;

use crate::diagnostics::residual_delta;
use crate::groups::Permutation;
use crate::numkernel::CMatrix;

/// Search nodes allowed per completion pass.
pub(crate) const COMPLETION_BUDGET: usize = 100_000;

const UNSET: usize = usize::MAX;

struct Backtrack<'a> {
    r: &'a CMatrix,
    tau: f64,
    tol: f64,
    nodes: usize,
}

impl Backtrack<'_> {
    fn fits(&self, j: usize, a: usize, b: usize, i: usize) -> bool {
        (self.r[(a, i)] - self.r[(j, b)]).norm() <= self.tol
            && (self.r[(i, a)] - self.r[(b, j)]).norm() <= self.tol
    }

    /// Candidate images of every point under the anchors `(b, i)`.
    fn candidates(&self, anchors: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let m = self.r.rows();
        (0..m)
            .map(|j| {
                (0..m)
                    .filter(|&a| {
                        (self.r[(a, a)] - self.r[(j, j)]).norm() <= self.tol
                            && anchors.iter().all(|&(b, i)| self.fits(j, a, b, i))
                    })
                    .collect()
            })
            .collect()
    }

    fn extend(&mut self, image: &mut [usize], cand: &[Vec<usize>]) -> Option<Permutation> {
        self.nodes += 1;
        if self.nodes > COMPLETION_BUDGET {
            return None;
        }
        let used: HashSet<usize> = image.iter().copied().filter(|&a| a != UNSET).collect();
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for (j, c) in cand.iter().enumerate() {
            if image[j] != UNSET {
                continue;
            }
            let free: Vec<usize> = c.iter().copied().filter(|a| !used.contains(a)).collect();
            if free.is_empty() {
                return None;
            }
            if pick.as_ref().is_none_or(|(_, p)| free.len() < p.len()) {
                pick = Some((j, free));
            }
        }
        let Some((j, free)) = pick else {
            let p = Permutation::new(image.to_vec()).ok()?;
            return (residual_delta(&p, self.r).ok()? <= self.tau).then_some(p);
        };
        for a in free {
            let narrowed: Vec<Vec<usize>> = cand
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if image[k] != UNSET || k == j {
                        c.clone()
                    } else {
                        c.iter().copied().filter(|&x| x != a && self.fits(k, x, j, a)).collect()
                    }
                })
                .collect();
            image[j] = a;
            if let Some(p) = self.extend(image, &narrowed) {
                return Some(p);
            }
            image[j] = UNSET;
            if self.nodes > COMPLETION_BUDGET {
                return None;
            }
        }
        None
    }
}

/// A symmetry of `r` with `δ ≤ tau` outside the group `known`, if the search
/// finds one within its budget.
pub(crate) fn missing_symmetry(r: &CMatrix, known: &HashSet<Permutation>, tau: f64) -> Option<Permutation> {
    let m = r.rows();
    let mut search = Backtrack {
        r,
        tau,
        tol: tau * r.frobenius_norm(),
        nodes: 0,
    };
    let mut stab: Vec<&Permutation> = known.iter().collect();
    for k in 0..m {
        let orbit: HashSet<usize> = stab.iter().map(|h| h.images()[k]).collect();
        let mut anchors: Vec<(usize, usize)> = (0..k).map(|b| (b, b)).collect();
        for a in k + 1..m {
            if orbit.contains(&a) {
                continue;
            }
            anchors.push((k, a));
            let cand = search.candidates(&anchors);
            let mut image = vec![UNSET; m];
            for &(b, i) in &anchors {
                image[b] = i;
            }
            if anchors.iter().all(|&(b, i)| cand[b].contains(&i)) {
                if let Some(p) = search.extend(&mut image, &cand) {
                    return Some(p);
                }
            }
            if search.nodes > COMPLETION_BUDGET {
                return None;
            }
            anchors.pop();
        }
        stab.retain(|h| h.images()[k] == k);
    }
    None
}
