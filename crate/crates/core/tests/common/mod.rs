#![allow(dead_code)]

use std::collections::BTreeSet;

use mgt_core::groups::{closure_enumerate, GroupAction, Permutation};
use mgt_core::numkernel::{CMatrix, C64};

/// Every permutation of `0..m` as an image list (Heap's algorithm).
pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..m).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; m];
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `P R Pᵀ = R` read entrywise: `R[p(i), p(j)] = R[i, j]`.
pub fn commutes(images: &[usize], r: &CMatrix, tol: f64) -> bool {
    let m = images.len();
    let bound = tol * r.max_abs();
    (0..m).all(|i| (0..m).all(|j| (r[(images[i], images[j])] - r[(i, j)]).norm() <= bound))
}

/// Matched group of `R` by exhaustive search over `S_M`.
pub fn brute_matched_group(r: &CMatrix, tol: f64) -> BTreeSet<Vec<usize>> {
    all_permutations(r.rows())
        .into_iter()
        .filter(|p| commutes(p, r, tol))
        .collect()
}

/// Closure of a generator list as a set of image lists.
pub fn closure_of(gens: &[Permutation], m: usize) -> BTreeSet<Vec<usize>> {
    if gens.is_empty() {
        return BTreeSet::from([(0..m).collect()]);
    }
    let g = GroupAction::from_generators(gens.to_vec(), "closure").unwrap();
    closure_enumerate(&g, 1_000_000)
        .into_result()
        .unwrap()
        .into_iter()
        .map(|p| p.images().to_vec())
        .collect()
}

/// Closure by repeated composition, without the library's enumerator.
pub fn naive_closure(gens: &[Vec<usize>], m: usize) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([(0..m).collect()]);
    let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<usize> = (0..m).map(|i| g[x[i]]).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Integer matrix product.
pub fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[t][j];
            }
        }
    }
    out
}

pub fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Unnormalized DFT with `ω = e^{+2πi/M}`.
pub fn dft_plus(seq: &[C64]) -> Vec<C64> {
    let m = seq.len();
    (0..m)
        .map(|k| {
            seq.iter()
                .enumerate()
                .map(|(d, &c)| c * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * ((d * k) % m) as f64 / m as f64))
                .sum()
        })
        .collect()
}

/// Frobenius norm of `U*U − I`, computed directly.
pub fn unitarity_error(u: &CMatrix) -> f64 {
    let n = u.cols();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..u.rows() {
                s += u[(i, a)].conj() * u[(i, b)];
            }
            if a == b {
                s -= C64::new(1.0, 0.0);
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}
