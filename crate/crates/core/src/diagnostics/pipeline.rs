use std::fmt;
use std::str::FromStr;

use super::covariance::{dct_fold_cov, sample_invariant_cov};
use super::matching::{circle_check, subspace_match, MatchReport};
use super::DEFAULT_CLUSTER_TOL;
use crate::error::{Error, Result};
use crate::groups::{make_boolean, make_cyclic, make_dyadic_wreath};
use crate::transforms::{dct2_matrix, dft_matrix, haar_matrix, wht_matrix};

/// Threshold on the minimum subspace match for a verification case to pass.
pub const VERIFY_MATCH_TOL: f64 = 1e-6;

/// Known group/transform pairs checked end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyCase {
    /// `Z_16` against the DFT.
    Dft,
    /// `Z_2^4` against the WHT.
    Wht,
    /// Folded dihedral covariance at `M = 8` against DCT-II.
    Dct,
    /// Dyadic wreath at depth 5 against Haar.
    Haar,
    /// Separated real circulant on 64 points against the real Fourier basis.
    Circle64,
}

impl VerifyCase {
    pub const ALL: [VerifyCase; 5] = [
        VerifyCase::Dft,
        VerifyCase::Wht,
        VerifyCase::Dct,
        VerifyCase::Haar,
        VerifyCase::Circle64,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyCase::Dft => "dft",
            VerifyCase::Wht => "wht",
            VerifyCase::Dct => "dct",
            VerifyCase::Haar => "haar",
            VerifyCase::Circle64 => "circle64",
        }
    }

    pub fn group_label(self) -> &'static str {
        match self {
            VerifyCase::Dft => "cyclic:16",
            VerifyCase::Wht => "boolean:4",
            VerifyCase::Dct => "dihedral:8 folded",
            VerifyCase::Haar => "dyadic-wreath:5",
            VerifyCase::Circle64 => "circle:64",
        }
    }

    pub fn transform_label(self) -> &'static str {
        match self {
            VerifyCase::Dft => "DFT",
            VerifyCase::Wht => "WHT",
            VerifyCase::Dct => "DCT-II",
            VerifyCase::Haar => "Haar",
            VerifyCase::Circle64 => "real Fourier",
        }
    }

    /// Samples an invariant covariance, eigendecomposes it and matches the
    /// eigenspaces against the predicted transform.
    pub fn run(self, seed: u64) -> Result<CaseReport> {
        let report = match self {
            VerifyCase::Dft => {
                let r = sample_invariant_cov(&make_cyclic(16)?, seed);
                subspace_match(&r, &dft_matrix(16)?, DEFAULT_CLUSTER_TOL)?
            }
            VerifyCase::Wht => {
                let r = sample_invariant_cov(&make_boolean(4)?, seed);
                subspace_match(&r, &wht_matrix(4)?, DEFAULT_CLUSTER_TOL)?
            }
            VerifyCase::Dct => subspace_match(&dct_fold_cov(8, seed)?, &dct2_matrix(8)?, DEFAULT_CLUSTER_TOL)?,
            VerifyCase::Haar => {
                let r = sample_invariant_cov(&make_dyadic_wreath(5)?, seed);
                subspace_match(&r, &haar_matrix(5)?, DEFAULT_CLUSTER_TOL)?
            }
            VerifyCase::Circle64 => circle_check(64, seed)?,
        };
        Ok(CaseReport { case: self, report })
    }
}

impl fmt::Display for VerifyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VerifyCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VerifyCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown verify case `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub case: VerifyCase,
    pub report: MatchReport,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.report.min_match >= 1.0 - VERIFY_MATCH_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes_one_seed() {
        for case in VerifyCase::ALL {
            let rep = case.run(42).unwrap();
            assert!(rep.passed(), "{case}: {}", rep.report.min_match);
        }
    }

    #[test]
    fn names_round_trip() {
        for case in VerifyCase::ALL {
            assert_eq!(case.name().parse::<VerifyCase>().unwrap(), case);
        }
        assert!("fft".parse::<VerifyCase>().is_err());
    }
}
