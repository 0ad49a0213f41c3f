use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::unitary::{ColumnLabel, UnitaryTransform};
use crate::error::{Error, Result};
use crate::numkernel::{kron, CMatrix, C64};

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Size(msg()))
    }
}

/// Unitary DFT, `U[j,k] = e^{2πi jk/M}/√M`.
pub fn dft_matrix(m: usize) -> Result<UnitaryTransform> {
    require(m >= 1, || "DFT needs M >= 1".into())?;
    let s = 1.0 / (m as f64).sqrt();
    let u = CMatrix::from_fn(m, m, |j, k| {
        // Reduce jk mod M first so the angle stays small.
        let t = 2.0 * PI * ((j * k) % m) as f64 / m as f64;
        C64::from_polar(s, t)
    });
    UnitaryTransform::new(
        u,
        format!("cyclic:{m}"),
        (0..m).map(ColumnLabel::Frequency).collect(),
    )
}

/// Real Hartley basis, `(cos + sin)(2π jk/M)/√M`.
pub fn hartley_matrix(m: usize) -> Result<UnitaryTransform> {
    require(m >= 1, || "Hartley needs M >= 1".into())?;
    let s = 1.0 / (m as f64).sqrt();
    let u = CMatrix::from_fn(m, m, |j, k| {
        let t = 2.0 * PI * ((j * k) % m) as f64 / m as f64;
        real(s * (t.cos() + t.sin()))
    });
    UnitaryTransform::new(
        u,
        format!("cyclic:{m}"),
        (0..m).map(ColumnLabel::Frequency).collect(),
    )
}

/// Orthonormal DCT-II; rows are samples `j`, columns frequencies `k`.
pub fn dct2_matrix(m: usize) -> Result<UnitaryTransform> {
    require(m >= 1, || "DCT-II needs M >= 1".into())?;
    let scale = (2.0 / m as f64).sqrt();
    let u = CMatrix::from_fn(m, m, |j, k| {
        let w = if k == 0 { FRAC_1_SQRT_2 } else { 1.0 };
        real(scale * w * (PI * (2 * j + 1) as f64 * k as f64 / (2 * m) as f64).cos())
    });
    UnitaryTransform::new(
        u,
        format!("dihedral:{m}"),
        (0..m).map(ColumnLabel::Frequency).collect(),
    )
}

/// Walsh-Hadamard in natural (Hadamard) order: `(−1)^{popcount(j & k)}/2^{n/2}`.
pub fn wht_matrix(n: usize) -> Result<UnitaryTransform> {
    require((1..=12).contains(&n), || format!("WHT needs 1 <= n <= 12, got {n}"))?;
    let m = 1usize << n;
    let s = 1.0 / (m as f64).sqrt();
    let u = CMatrix::from_fn(m, m, |j, k| {
        if (j & k).count_ones() % 2 == 0 {
            real(s)
        } else {
            real(-s)
        }
    });
    UnitaryTransform::new(
        u,
        format!("boolean:{n}"),
        (0..m).map(ColumnLabel::Index).collect(),
    )
}

/// `H₁^{⊗n}` built by repeated Kronecker products.
pub fn wht_by_kron(n: usize) -> Result<CMatrix> {
    require((1..=12).contains(&n), || format!("WHT needs 1 <= n <= 12, got {n}"))?;
    let h1 = CMatrix::from_real_rows(&[&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]]);
    let mut u = h1.clone();
    for _ in 1..n {
        u = kron(&u, &h1);
    }
    Ok(u)
}

/// Haar basis on `2^L` points: the scaling column, then wavelets by scale
/// `s = 1..L` and position `p = 0..2^{s−1}−1`. The wavelet `(s, p)` is
/// `+a` on `[p·2^{L−s+1}, +2^{L−s})`, `−a` on the next `2^{L−s}` samples,
/// with `a = 2^{(s−L−1)/2}`.
pub fn haar_matrix(levels: usize) -> Result<UnitaryTransform> {
    require((1..=12).contains(&levels), || {
        format!("Haar needs 1 <= L <= 12, got {levels}")
    })?;
    let m = 1usize << levels;
    let mut u = CMatrix::zeros(m, m);
    let mut labels = Vec::with_capacity(m);
    let c0 = (m as f64).sqrt().recip();
    for j in 0..m {
        u[(j, 0)] = real(c0);
    }
    labels.push(ColumnLabel::ScalePosition { scale: 0, position: 0 });
    let mut col = 1;
    for s in 1..=levels {
        let h = 1usize << (levels - s);
        let amp = 2f64.powf((s as f64 - levels as f64 - 1.0) / 2.0);
        for p in 0..1usize << (s - 1) {
            let a = p * 2 * h;
            for j in a..a + h {
                u[(j, col)] = real(amp);
                u[(j + h, col)] = real(-amp);
            }
            labels.push(ColumnLabel::ScalePosition { scale: s, position: p });
            col += 1;
        }
    }
    UnitaryTransform::new(u, format!("dyadic-wreath:{levels}"), labels)
}

/// Real Fourier basis on `N` points (`N` even): the constant, then
/// `√(2/N)·(cos, sin)(2πjk/N)` for `k = 1..N/2−1`, then `(−1)^j/√N`.
pub fn real_fourier_matrix(n: usize) -> Result<UnitaryTransform> {
    require(n >= 2 && n % 2 == 0, || format!("real Fourier basis needs even N >= 2, got {n}"))?;
    let half = n / 2;
    let mut u = CMatrix::zeros(n, n);
    let mut labels = Vec::with_capacity(n);
    let c0 = 1.0 / (n as f64).sqrt();
    let a = (2.0 / n as f64).sqrt();
    for j in 0..n {
        u[(j, 0)] = real(c0);
        u[(j, n - 1)] = real(if j % 2 == 0 { c0 } else { -c0 });
    }
    labels.push(ColumnLabel::Cosine(0));
    for k in 1..half {
        for j in 0..n {
            let t = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
            u[(j, 2 * k - 1)] = real(a * t.cos());
            u[(j, 2 * k)] = real(a * t.sin());
        }
        labels.push(ColumnLabel::Cosine(k));
        labels.push(ColumnLabel::Sine(k));
    }
    labels.push(ColumnLabel::Cosine(half));
    UnitaryTransform::new(u, format!("dihedralM:{n}"), labels)
}

/// `2M×M` isometry with column `j = (e_j + e_{2M−1−j})/√2`.
pub fn even_extension_isometry(m: usize) -> Result<CMatrix> {
    require(m >= 1, || "even extension needs M >= 1".into())?;
    let mut s = CMatrix::zeros(2 * m, m);
    for j in 0..m {
        s[(j, j)] = real(FRAC_1_SQRT_2);
        s[(2 * m - 1 - j, j)] = real(FRAC_1_SQRT_2);
    }
    Ok(s)
}

/// `U ⊗ V`, matching the flattened index `i·n + j` of the product action.
pub fn compose_direct(u: &UnitaryTransform, v: &UnitaryTransform) -> Result<UnitaryTransform> {
    let mut labels = Vec::with_capacity(u.size() * v.size());
    for a in u.labels() {
        for b in v.labels() {
            labels.push(ColumnLabel::Product(Box::new(a.clone()), Box::new(b.clone())));
        }
    }
    UnitaryTransform::new(
        kron(u.matrix(), v.matrix()),
        format!("product:({},{})", u.group_name(), v.group_name()),
        labels,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn dft_hand_values() {
        assert!(close(dft_matrix(1).unwrap().matrix()[(0, 0)], real(1.0)));
        let d2 = dft_matrix(2).unwrap();
        assert!(close(d2.matrix()[(1, 1)], real(-FRAC_1_SQRT_2)));
        assert!(close(dft_matrix(4).unwrap().matrix()[(1, 1)], C64::new(0.0, 0.5)));
        assert!(dft_matrix(0).is_err());
    }

    #[test]
    fn hartley_values() {
        let h = hartley_matrix(4).unwrap();
        assert!(close(h.matrix()[(1, 1)], real(0.5)));
        assert!(close(hartley_matrix(1).unwrap().matrix()[(0, 0)], real(1.0)));
        assert!(hartley_matrix(16).unwrap().matrix().unitarity_defect() <= 1e-12);
    }

    #[test]
    fn dct2_values() {
        let d = dct2_matrix(2).unwrap();
        let c = (PI / 4.0).cos();
        assert!(close(d.matrix()[(0, 0)], real(FRAC_1_SQRT_2)));
        assert!(close(d.matrix()[(0, 1)], real(c)));
        assert!(close(d.matrix()[(1, 1)], real((3.0 * PI / 4.0).cos())));
        let d8 = dct2_matrix(8).unwrap();
        assert!(d8.matrix().unitarity_defect() <= 1e-12);
        for j in 0..8 {
            assert!(close(d8.matrix()[(j, 0)], real(1.0 / 8f64.sqrt())));
        }
    }

    #[test]
    fn wht_closed_form_matches_kron() {
        let w2 = wht_matrix(2).unwrap();
        assert!(close(w2.matrix()[(3, 3)], real(0.5)));
        for n in 1..=4 {
            let closed = wht_matrix(n).unwrap();
            assert!(closed.matrix().max_diff(&wht_by_kron(n).unwrap()) <= 1e-14);
        }
        assert!(wht_matrix(0).is_err() && wht_matrix(13).is_err());
    }

    #[test]
    fn haar_columns() {
        let h1 = haar_matrix(1).unwrap();
        assert!(h1.matrix().max_diff(&wht_by_kron(1).unwrap()) < 1e-15);
        let h2 = haar_matrix(2).unwrap();
        let psi = h2.matrix().column(1);
        let want = [0.5, 0.5, -0.5, -0.5];
        assert!(psi.iter().zip(want).all(|(a, b)| close(*a, real(b))));
        let h3 = haar_matrix(3).unwrap();
        assert_eq!(h3.size(), 8);
        assert!(h3.matrix().unitarity_defect() <= 1e-12);
        assert_eq!(
            h3.labels()[4],
            ColumnLabel::ScalePosition { scale: 3, position: 0 }
        );
    }

    #[test]
    fn real_fourier_is_orthogonal() {
        let f = real_fourier_matrix(64).unwrap();
        assert!(f.matrix().is_real(0.0));
        assert!(f.matrix().unitarity_defect() < 1e-12);
        assert!(real_fourier_matrix(2).is_ok());
        assert!(real_fourier_matrix(5).is_err());
    }

    #[test]
    fn even_extension_is_isometry() {
        let s1 = even_extension_isometry(1).unwrap();
        assert!(close(s1[(1, 0)], real(FRAC_1_SQRT_2)));
        let s = even_extension_isometry(8).unwrap();
        let sts = s.adjoint().matmul(&s).unwrap();
        assert!(sts.max_diff(&CMatrix::identity(8)) < 1e-15);
    }

    #[test]
    fn direct_composition() {
        let d2 = dft_matrix(2).unwrap();
        let dd = compose_direct(&d2, &d2).unwrap();
        assert!(dd.matrix().max_diff(wht_matrix(2).unwrap().matrix()) < 1e-15);
        let one = dft_matrix(1).unwrap();
        let u = dft_matrix(5).unwrap();
        assert!(compose_direct(&u, &one).unwrap().matrix().max_diff(u.matrix()) < 1e-15);
    }
}
