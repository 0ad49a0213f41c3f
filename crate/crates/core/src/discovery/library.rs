use crate::diagnostics::{coloring_alpha, residual_delta};
use crate::error::Result;
use crate::groups::{closure_enumerate, GroupAction};
use crate::numkernel::CMatrix;

/// Scores at or below this are treated as exact ties.
pub const SCORE_QUANTUM: f64 = 1e-12;

/// Default cap used to size library groups for tie-breaking.
pub const LIBRARY_ORDER_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LibraryEntry {
    pub name: String,
    /// Largest generator residual `δ`.
    pub score: f64,
    pub alpha: f64,
    /// `None` when larger than the enumeration cap.
    pub order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LibraryRanking {
    /// Best first.
    pub entries: Vec<LibraryEntry>,
    /// Candidates skipped for a degree mismatch.
    pub warnings: Vec<String>,
}

impl LibraryRanking {
    pub fn best(&self) -> Option<&LibraryEntry> {
        self.entries.first()
    }
}

/// Ranks library actions by their worst generator residual against `R`,
/// breaking ties by larger group order and then by name.
pub fn match_library(r: &CMatrix, library: &[GroupAction]) -> Result<LibraryRanking> {
    let m = r.require_square()?;
    let mut out = LibraryRanking::default();
    for g in library {
        if g.degree() != m {
            out.warnings.push(format!(
                "skipped {}: degree {} does not match {m}",
                g.name(),
                g.degree()
            ));
            continue;
        }
        let mut score = 0.0f64;
        for p in g.generators() {
            score = score.max(residual_delta(p, r)?);
        }
        if score <= SCORE_QUANTUM {
            score = 0.0;
        }
        out.entries.push(LibraryEntry {
            name: g.name().to_string(),
            score,
            alpha: coloring_alpha(g, r)?,
            order: closure_enumerate(g, LIBRARY_ORDER_CAP).order(),
        });
    }
    out.entries.sort_by(|a, b| {
        a.score
            .total_cmp(&b.score)
            .then_with(|| match (a.order, b.order) {
                (Some(x), Some(y)) => y.cmp(&x),
                (None, Some(_)) => std::cmp::Ordering::Less,
                (Some(_), None) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
            .then_with(|| a.name.cmp(&b.name))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::sample_invariant_cov;
    use crate::groups::*;

    #[test]
    fn dihedral_sample_prefers_dihedral() {
        let r = sample_invariant_cov(&make_dihedral_on_m(8).unwrap(), 3);
        let lib = vec![
            make_cyclic(8).unwrap(),
            make_dihedral_on_m(8).unwrap(),
            make_boolean(3).unwrap(),
            make_trivial(8),
        ];
        let rank = match_library(&r, &lib).unwrap();
        let names: Vec<_> = rank.entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names[0], make_dihedral_on_m(8).unwrap().name());
        assert_eq!(names[1], make_cyclic(8).unwrap().name());
        assert_eq!(rank.entries[0].score, 0.0);
        assert!(rank.entries.iter().find(|e| e.name == make_boolean(3).unwrap().name()).unwrap().score > 1e-3);
        assert!(rank.warnings.is_empty());
    }

    #[test]
    fn degree_mismatch_is_a_warning() {
        let r = sample_invariant_cov(&make_cyclic(4).unwrap(), 1);
        let rank = match_library(&r, &[make_cyclic(8).unwrap(), make_cyclic(4).unwrap()]).unwrap();
        assert_eq!(rank.entries.len(), 1);
        assert_eq!(rank.warnings.len(), 1);
    }
}
