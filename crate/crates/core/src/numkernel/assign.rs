//! Exact linear assignment (Hungarian method with potentials, O(n³)).

use crate::error::{Error, Result};
use crate::groups::Permutation;

/// Square real score matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    n: usize,
    data: Vec<f64>,
}

impl ScoreMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension(format!(
                "score matrix needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: k / n, col: k % n });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    /// `Σ_i S[π(i), i]`.
    pub fn score(&self, perm: &Permutation) -> f64 {
        (0..self.n).map(|i| self.get(perm.image(i), i)).sum()
    }
}

/// Permutation `π` maximizing `Σ_i S[π(i), i]`, i.e. the permutation matrix
/// `P` (with `P[π(j), j] = 1`) maximizing `tr(Pᵀ S)`.
pub fn hungarian_max(s: &ScoreMatrix) -> Permutation {
    let n = s.size();
    if n == 0 {
        return Permutation::identity(0);
    }
    // Minimize cost[w][j] = -S[j][w]: worker w is column w, job j is row j.
    let cost = |w: usize, j: usize| -s.get(j, w);
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut job_owner = vec![0usize; n + 1]; // 1-based worker per job, 0 = free
    let mut way = vec![0usize; n + 1];

    for w in 1..=n {
        job_owner[0] = w;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let w0 = job_owner[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(w0 - 1, j - 1) - u[w0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[job_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if job_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            job_owner[j0] = job_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut images = vec![0usize; n];
    for j in 1..=n {
        images[job_owner[j] - 1] = j - 1;
    }
    Permutation::new(images).expect("assignment is a bijection")
}
