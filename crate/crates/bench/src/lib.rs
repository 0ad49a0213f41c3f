//! Shared fixtures for the criterion benches.

use mgt_core::numkernel::{random_psd, CMatrix};

/// Seeded Hermitian PSD input of size `m`.
pub fn fixture(m: usize) -> CMatrix {
    random_psd(m, 0x5eed ^ m as u64)
}

/// Seeded positive-definite metric of size `m`.
pub fn metric(m: usize) -> CMatrix {
    &random_psd(m, 0xfeed ^ m as u64) + &CMatrix::identity(m)
}
