//! Reed-Muller, fixed-polarity Reed-Muller and arithmetic transforms on `Z_2^n`.
//!
//! Truth tables are indexed so that bit `i` of the index is the value of
//! variable `x_i`; polarity entry `p[i]` applies to `x_i`. Every transform is a
//! Kronecker product of `2×2` integer blocks, one per variable, with variable
//! `n−1` as the leftmost factor.

use crate::error::{Error, Result};

/// Arithmetic the transform is meant for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulus {
    /// Exact integers.
    None,
    /// Reduction mod 2.
    Two,
}

type Block = [[i64; 2]; 2];

const RM0: Block = [[1, 0], [1, 1]];
const RM1: Block = [[1, 1], [0, 1]];
const ARITH: Block = [[1, 0], [-1, 1]];

/// Largest variable count for which a dense matrix is materialized.
pub const MAX_DENSE_VARS: usize = 12;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("integer matrix must be square".into()));
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    /// Exact product; fails on `i64` overflow.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::Dimension("integer matrix sizes differ".into()));
        }
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    data[i * n + j] = data[i * n + j].checked_add(t).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(IntMatrix { n, data })
    }

    /// Entrywise reduction to `{0, 1}`.
    pub fn mod2(&self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x.rem_euclid(2)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(Error::Overflow)?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }
}

/// Integer transform `B_{n−1} ⊗ … ⊗ B_0` on `2^n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntTransform {
    name: String,
    blocks: Vec<Block>,
    modulus: Modulus,
}

impl IntTransform {
    fn build(name: String, blocks: Vec<Block>, modulus: Modulus) -> Self {
        Self {
            name,
            blocks,
            modulus,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> usize {
        self.blocks.len()
    }

    pub fn size(&self) -> usize {
        1 << self.blocks.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Entry `(r, c)` as a product of per-variable block entries.
    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| b[(r >> i) & 1][(c >> i) & 1])
            .product()
    }

    pub fn dense(&self) -> Result<IntMatrix> {
        if self.vars() > MAX_DENSE_VARS {
            return Err(Error::Size(format!(
                "dense form limited to n <= {MAX_DENSE_VARS} variables"
            )));
        }
        let m = self.size();
        let mut data = Vec::with_capacity(m * m);
        for r in 0..m {
            for c in 0..m {
                data.push(self.entry(r, c));
            }
        }
        Ok(IntMatrix { n: m, data })
    }

    /// Exact determinant: dense Bareiss elimination for `n ≤ 8`, otherwise the
    /// Kronecker rule `det(A ⊗ B) = det(A)^{dim B} det(B)^{dim A}`.
    pub fn determinant(&self) -> Result<i128> {
        if self.vars() <= 8 {
            return self.dense()?.determinant();
        }
        let half = 1u32 << (self.vars() - 1);
        let mut det = 1i128;
        for b in &self.blocks {
            let d = i128::from(b[0][0] * b[1][1] - b[0][1] * b[1][0]);
            det = det
                .checked_mul(d.checked_pow(half).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        Ok(det)
    }

    /// `T v` over the integers, by per-variable butterflies.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.size() {
            return Err(Error::Input(format!(
                "vector of length {} for a transform of size {}",
                v.len(),
                self.size()
            )));
        }
        let mut out = v.to_vec();
        for (i, b) in self.blocks.iter().enumerate() {
            let h = 1 << i;
            for base in (0..out.len()).step_by(2 * h) {
                for lo in base..base + h {
                    let (x, y) = (out[lo], out[lo + h]);
                    let nx = b[0][0]
                        .checked_mul(x)
                        .zip(b[0][1].checked_mul(y))
                        .and_then(|(a, c)| a.checked_add(c))
                        .ok_or(Error::Overflow)?;
                    let ny = b[1][0]
                        .checked_mul(x)
                        .zip(b[1][1].checked_mul(y))
                        .and_then(|(a, c)| a.checked_add(c))
                        .ok_or(Error::Overflow)?;
                    out[lo] = nx;
                    out[lo + h] = ny;
                }
            }
        }
        Ok(out)
    }
}

fn check_vars(n: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::Size(format!("need 1 <= n <= {max}, got {n}")))
    }
}

/// Reed-Muller transform `R_n = R₁^{⊗n}`, `R₁ = [[1,0],[1,1]]`; entry `(S,T)`
/// is 1 iff `T ⊆ S`.
pub fn rm_matrix(n: usize) -> Result<IntTransform> {
    check_vars(n, 16)?;
    Ok(IntTransform::build(
        format!("rm:{n}"),
        vec![RM0; n],
        Modulus::Two,
    ))
}

/// Fixed-polarity Reed-Muller transform; `polarity[i]` selects
/// `[[1,0],[1,1]]` (false) or `[[1,1],[0,1]]` (true) for variable `x_i`.
pub fn fp_rm_matrix(polarity: &[bool]) -> Result<IntTransform> {
    check_vars(polarity.len(), 16)?;
    let bits: String = polarity.iter().map(|&p| if p { '1' } else { '0' }).collect();
    Ok(IntTransform::build(
        format!("fprm:{bits}"),
        polarity.iter().map(|&p| if p { RM1 } else { RM0 }).collect(),
        Modulus::Two,
    ))
}

/// Arithmetic transform `A_n = A₁^{⊗n}`, `A₁ = [[1,0],[−1,1]]`, the exact
/// integer inverse of `R_n`.
pub fn arithmetic_matrix(n: usize) -> Result<IntTransform> {
    check_vars(n, 16)?;
    Ok(IntTransform::build(
        format!("arith:{n}"),
        vec![ARITH; n],
        Modulus::None,
    ))
}

fn vars_of_table(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Input(format!(
            "truth table length {len} is not 2^n with n >= 1"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

/// In-place mod-2 butterfly for one variable.
fn flip_step(c: &mut [bool], bit: usize, polarity: bool) {
    let h = 1 << bit;
    for base in (0..c.len()).step_by(2 * h) {
        for lo in base..base + h {
            if polarity {
                c[lo] ^= c[lo + h];
            } else {
                c[lo + h] ^= c[lo];
            }
        }
    }
}

/// Fixed-polarity ANF coefficients `R_n^{(p)} f mod 2`.
pub fn anf_coefficients(truth_table: &[bool], polarity: &[bool]) -> Result<Vec<bool>> {
    let n = vars_of_table(truth_table.len())?;
    if polarity.len() != n {
        return Err(Error::Input(format!(
            "polarity has {} bits but the truth table has {n} variables",
            polarity.len()
        )));
    }
    let mut c = truth_table.to_vec();
    for (i, &p) in polarity.iter().enumerate() {
        flip_step(&mut c, i, p);
    }
    Ok(c)
}

/// Polarity with the fewest nonzero coefficients over all `2^n` choices,
/// ties going to the smallest `Σ p[i] 2^i`. Walks polarities in Gray-code
/// order, updating one variable per step.
pub fn best_polarity(truth_table: &[bool]) -> Result<(Vec<bool>, usize)> {
    let n = vars_of_table(truth_table.len())?;
    if n > 16 {
        return Err(Error::Size(format!("exhaustive search limited to n <= 16, got {n}")));
    }
    let mut pol = vec![false; n];
    let mut c = anf_coefficients(truth_table, &pol)?;
    let mut weight = c.iter().filter(|&&b| b).count();
    let mut best = (weight, 0usize);
    let mut code = 0usize;
    for t in 1usize..1 << n {
        let i = t.trailing_zeros() as usize;
        let h = 1 << i;
        // Switch variable i between the two polarity blocks in place.
        for base in (0..c.len()).step_by(2 * h) {
            for lo in base..base + h {
                let (x, y) = (c[lo], c[lo + h]);
                let (nx, ny) = if pol[i] { (x ^ y, x) } else { (y, x ^ y) };
                weight = weight + nx as usize + ny as usize - x as usize - y as usize;
                c[lo] = nx;
                c[lo + h] = ny;
            }
        }
        pol[i] = !pol[i];
        code ^= h;
        if (weight, code) < best {
            best = (weight, code);
        }
    }
    let polarity = (0..n).map(|i| (best.1 >> i) & 1 == 1).collect();
    Ok((polarity, best.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm_hand_values() {
        let r1 = rm_matrix(1).unwrap().dense().unwrap();
        assert_eq!(r1.rows(), vec![vec![1, 0], vec![1, 1]]);
        let r2 = rm_matrix(2).unwrap().dense().unwrap();
        assert_eq!(r2.rows()[3], vec![1, 1, 1, 1]);
        let r3 = rm_matrix(3).unwrap().dense().unwrap();
        assert!(r3.mul(&r3).unwrap().mod2().is_identity());
        assert!(rm_matrix(0).is_err() && rm_matrix(17).is_err());
    }

    #[test]
    fn subset_rule() {
        let r = rm_matrix(4).unwrap();
        for s in 0..16 {
            for t in 0..16 {
                assert_eq!(r.entry(s, t), i64::from(t & s == t));
            }
        }
    }

    #[test]
    fn fixed_polarity_hand_values() {
        let p1 = fp_rm_matrix(&[true]).unwrap().dense().unwrap();
        assert_eq!(p1.rows(), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(
            fp_rm_matrix(&[false, false]).unwrap().dense().unwrap(),
            rm_matrix(2).unwrap().dense().unwrap()
        );
        let p = fp_rm_matrix(&[true, false]).unwrap().dense().unwrap();
        assert!(p.mul(&p).unwrap().mod2().is_identity());
    }

    #[test]
    fn arithmetic_inverts_rm() {
        let a1 = arithmetic_matrix(1).unwrap().dense().unwrap();
        assert_eq!(a1.rows(), vec![vec![1, 0], vec![-1, 1]]);
        let r1 = rm_matrix(1).unwrap().dense().unwrap();
        assert!(a1.mul(&r1).unwrap().is_identity());
        let a3 = arithmetic_matrix(3).unwrap().dense().unwrap();
        let r3 = rm_matrix(3).unwrap().dense().unwrap();
        assert!(a3.mul(&r3).unwrap().is_identity());
        assert!(r3.mul(&a3).unwrap().is_identity());
    }

    #[test]
    fn bareiss_determinants() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 1);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.determinant().unwrap(), -1);
        let sing = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        assert_eq!(sing.determinant().unwrap(), 0);
        let m3 = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 0, 4], vec![5, 6, 0]]).unwrap();
        assert_eq!(m3.determinant().unwrap(), 58);
        for n in 1..=8 {
            assert_eq!(rm_matrix(n).unwrap().determinant().unwrap(), 1);
            assert_eq!(arithmetic_matrix(n).unwrap().determinant().unwrap(), 1);
        }
        assert_eq!(rm_matrix(12).unwrap().determinant().unwrap(), 1);
    }

    #[test]
    fn anf_examples() {
        assert_eq!(anf_coefficients(&[false; 4], &[false, false]).unwrap(), vec![false; 4]);
        let and = [false, false, false, true];
        assert_eq!(
            anf_coefficients(&and, &[false, false]).unwrap(),
            vec![false, false, false, true]
        );
        let f = [true, false, true, true, false, true, false, false];
        let c = anf_coefficients(&f, &[false; 3]).unwrap();
        assert_eq!(anf_coefficients(&c, &[false; 3]).unwrap(), f);
        assert!(anf_coefficients(&f, &[false; 2]).is_err());
        assert!(anf_coefficients(&[true; 3], &[false; 2]).is_err());
    }

    #[test]
    fn anf_matches_dense_product() {
        let f = [true, true, false, true, false, false, true, false];
        for code in 0..8 {
            let pol: Vec<bool> = (0..3).map(|i| (code >> i) & 1 == 1).collect();
            let t = fp_rm_matrix(&pol).unwrap().dense().unwrap();
            let fi: Vec<i64> = f.iter().map(|&b| i64::from(b)).collect();
            let want: Vec<bool> = (0..8)
                .map(|r| (0..8).map(|c| t.get(r, c) * fi[c]).sum::<i64>() % 2 == 1)
                .collect();
            assert_eq!(anf_coefficients(&f, &pol).unwrap(), want);
        }
    }

    #[test]
    fn polarity_search() {
        assert_eq!(best_polarity(&[false, false]).unwrap(), (vec![false], 0));
        // Complement of x0 is a single monomial at polarity 1.
        assert_eq!(best_polarity(&[true, false]).unwrap(), (vec![true], 1));
        let f = [true, false, true, true, false, true, true, false];
        let (p, w) = best_polarity(&f).unwrap();
        let exhaustive = (0..8)
            .map(|code| {
                let pol: Vec<bool> = (0..3).map(|i| (code >> i) & 1 == 1).collect();
                (anf_coefficients(&f, &pol).unwrap().iter().filter(|&&b| b).count(), code)
            })
            .min()
            .unwrap();
        let code: usize = p.iter().enumerate().map(|(i, &b)| usize::from(b) << i).sum();
        assert_eq!((w, code), exhaustive);
    }

    #[test]
    fn apply_matches_dense() {
        let a = arithmetic_matrix(3).unwrap();
        let v: Vec<i64> = vec![3, -1, 4, 1, -5, 9, 2, -6];
        let d = a.dense().unwrap();
        let want: Vec<i64> = (0..8).map(|r| (0..8).map(|c| d.get(r, c) * v[c]).sum()).collect();
        assert_eq!(a.apply(&v).unwrap(), want);
    }
}
