use crate::error::{Error, Result};

/// Default relative gap for splitting eigenvalue clusters.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// Consecutive eigenvalues with no gap above the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub indices: Vec<usize>,
}

/// Ordered partition of a sorted spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    clusters: Vec<Cluster>,
    tolerance: f64,
}

impl ClusterSet {
    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// Absolute gap threshold `rel_tol·(max − min)` used for splitting.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.indices.len()).collect()
    }

    /// Cluster whose spread, widened by `slack`, contains `value`; the nearest
    /// mean wins if windows overlap.
    pub fn locate(&self, value: f64, slack: f64) -> Option<usize> {
        self.clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| value >= c.min - slack && value <= c.max + slack)
            .min_by(|(_, a), (_, b)| (a.mean - value).abs().total_cmp(&(b.mean - value).abs()))
            .map(|(i, _)| i)
    }
}

/// Splits an ascending spectrum wherever consecutive values differ by more
/// than `rel_tol·(max − min)`.
pub fn eigen_clusters(values: &[f64], rel_tol: f64) -> Result<ClusterSet> {
    let (first, last) = match (values.first(), values.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Input("cannot cluster an empty spectrum".into())),
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input("spectrum contains non-finite values".into()));
    }
    if values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Input("spectrum must be sorted ascending".into()));
    }
    let tolerance = rel_tol * (last - first);
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tolerance {
            let slice = &values[start..i];
            clusters.push(Cluster {
                mean: slice.iter().sum::<f64>() / slice.len() as f64,
                min: slice[0],
                max: slice[slice.len() - 1],
                indices: (start..i).collect(),
            });
            start = i;
        }
    }
    Ok(ClusterSet {
        clusters,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_rule_examples() {
        assert_eq!(eigen_clusters(&[1.0, 1.0, 1.0], 0.5).unwrap().sizes(), vec![3]);
        assert_eq!(eigen_clusters(&[0.0, 1e-12, 5.0], 1e-6).unwrap().sizes(), vec![2, 1]);
        assert_eq!(eigen_clusters(&[1.0, 2.0, 3.0], 0.6).unwrap().sizes(), vec![3]);
        assert_eq!(eigen_clusters(&[1.0, 2.0, 3.0], 0.4).unwrap().sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eigen_clusters(&[], 1e-6).is_err());
        assert!(eigen_clusters(&[2.0, 1.0], 1e-6).is_err());
    }

    #[test]
    fn locate_with_slack() {
        let c = eigen_clusters(&[0.0, 0.0, 1.0], 1e-6).unwrap();
        assert_eq!(c.locate(1e-9, 1e-8), Some(0));
        assert_eq!(c.locate(0.5, 1e-8), None);
        assert_eq!(c.locate(1.0, 0.0), Some(1));
    }
}
