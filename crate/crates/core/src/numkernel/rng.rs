//! Seeded random streams.
//!
//! The generator is xoshiro256** seeded through SplitMix64 (`seed_from_u64`).
//! Uniforms take the top 53 bits of each 64-bit output; normals come from the
//! Box-Muller pair `sqrt(-2 ln(1-u1)) * (cos, sin)(2π u2)`, both halves used.
//! A standard complex Gaussian is `(z0 + i z1)/√2`.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use super::cmatrix::{CMatrix, C64};

/// Deterministic normal / complex-normal stream.
pub struct GaussianStream {
    rng: Xoshiro256StarStar,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        let im = self.normal();
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Matrix of i.i.d. standard complex Gaussians, filled row-major.
    pub fn complex_gaussian_matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    pub fn real_gaussian_matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| C64::new(self.normal(), 0.0))
    }

    /// Index in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }
}

/// `A·A*` for an `m×m` matrix `A` of standard complex Gaussians.
pub fn random_psd(m: usize, seed: u64) -> CMatrix {
    let a = GaussianStream::new(seed).complex_gaussian_matrix(m, m);
    let g = &a * &a.adjoint();
    // Exact Hermitian symmetry (the product is Hermitian only up to rounding).
    CMatrix::from_fn(m, m, |i, j| {
        if i == j {
            C64::new(g[(i, i)].re, 0.0)
        } else if i < j {
            g[(i, j)]
        } else {
            g[(j, i)].conj()
        }
    })
}

/// Real symmetric PSD `A·Aᵀ` for a real Gaussian `A`.
pub fn random_real_psd(m: usize, seed: u64) -> CMatrix {
    let a = GaussianStream::new(seed).real_gaussian_matrix(m, m);
    let g = &a * &a.transpose();
    CMatrix::from_fn(m, m, |i, j| {
        let (x, y) = if i <= j { (i, j) } else { (j, i) };
        C64::new(g[(x, y)].re, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::eigen::herm_eigvals;

    #[test]
    fn one_by_one_is_nonnegative_real() {
        let r = random_psd(1, 3);
        assert_eq!(r[(0, 0)].im, 0.0);
        assert!(r[(0, 0)].re >= 0.0);
    }

    #[test]
    fn psd_by_construction() {
        for s in 0..5 {
            let vals = herm_eigvals(&random_psd(8, s)).unwrap();
            assert!(vals.iter().all(|&v| v >= -1e-12), "{vals:?}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_psd(4, 7), random_psd(4, 7));
        assert_ne!(random_psd(4, 7), random_psd(4, 8));
    }

    #[test]
    fn normal_moments_are_plausible() {
        let mut g = GaussianStream::new(11);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| g.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05 && (var - 1.0).abs() < 0.05);
    }
}
