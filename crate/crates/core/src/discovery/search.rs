use std::collections::HashSet;

use super::basis::{BasisKind, CandidateBasis};
use super::complete::missing_symmetry;
use super::gevp::{dc_gevp_step_in, phase_normalize, round_to_permutation, DeflationSpace};
use crate::diagnostics::{coloring_alpha, eigen_clusters, residual_delta, DEFAULT_CLUSTER_TOL};
use crate::error::{Error, Result};
use crate::groups::{closure_enumerate, make_trivial, Closure, GroupAction, Permutation};
use crate::numkernel::{herm_eigvals, CMatrix, C64};

/// Floor on the relative stopping threshold, above eigensolver noise.
pub const LAMBDA_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DiscoveryConfig {
    pub basis: BasisKind,
    /// Acceptance threshold on the residual `δ`.
    pub tau: f64,
    /// Defaults to `4M` when unset.
    pub max_iters: Option<usize>,
    /// Largest closure enumerated explicitly.
    pub enumeration_cap: usize,
}

impl Default for DiscoveryConfig {
    fn default() -> Self {
        Self {
            basis: BasisKind::MatrixUnits,
            tau: 1e-8,
            max_iters: None,
            enumeration_cap: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The smallest remaining eigenvalue cleared the threshold.
    Converged,
    /// Deflation consumed the whole basis span.
    Exhausted,
    /// The iteration budget ran out with null directions left.
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct DiscoveryResult {
    pub generators: Vec<Permutation>,
    /// `δ` of each accepted generator.
    pub residuals: Vec<f64>,
    /// `None` when the closure exceeds the enumeration cap.
    pub group_order: Option<usize>,
    pub alpha: f64,
    pub iterations: usize,
    pub rejected_count: usize,
    /// `λ_min` of every step, relative to `‖R‖_F²`.
    pub lambda_trace: Vec<f64>,
    pub stop: StopReason,
    /// All eigenvalues of `R` fall in one cluster.
    pub degenerate_spectrum: bool,
}

impl DiscoveryResult {
    pub fn saturated(&self) -> bool {
        self.stop != StopReason::Converged
    }

    /// The discovered action, trivial when nothing was accepted.
    pub fn action(&self, m: usize) -> GroupAction {
        if self.generators.is_empty() {
            make_trivial(m)
        } else {
            GroupAction::from_generators(self.generators.clone(), "discovered")
                .expect("generators share a degree")
        }
    }
}

struct Search<'a> {
    r: &'a CMatrix,
    tau: f64,
    cap: usize,
    generators: Vec<Permutation>,
    residuals: Vec<f64>,
    known: HashSet<Permutation>,
    closure_complete: bool,
    space: DeflationSpace,
}

impl Search<'_> {
    fn is_new(&self, p: &Permutation) -> bool {
        !p.is_identity() && !self.known.contains(p)
    }

    fn try_accept(&mut self, p: Permutation) -> Result<bool> {
        if !self.is_new(&p) {
            return Ok(false);
        }
        let delta = residual_delta(&p, self.r)?;
        if delta > self.tau {
            return Ok(false);
        }
        self.generators.push(p.clone());
        self.residuals.push(delta);
        let mut fresh = vec![p];
        if self.closure_complete {
            let g = GroupAction::from_generators(self.generators.clone(), "discovered")?;
            match closure_enumerate(&g, self.cap) {
                Closure::Complete(all) => fresh = all,
                Closure::Overflow { .. } => self.closure_complete = false,
            }
        }
        for q in fresh {
            if self.known.insert(q.clone()) {
                self.space.add(&q.to_matrix());
            }
        }
        Ok(true)
    }
}

/// Greedy generating set of `group`: each element, in lexicographic order of
/// images, that falls outside the subgroup generated so far.
fn canonical_generators(group: &HashSet<Permutation>, cap: usize) -> Result<Vec<Permutation>> {
    let mut elements: Vec<&Permutation> = group.iter().collect();
    elements.sort_by(|a, b| a.images().cmp(b.images()));
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::new();
    for p in elements {
        if p.is_identity() || span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let g = GroupAction::from_generators(gens.clone(), "span")?;
        span = closure_enumerate(&g, cap).into_result()?.into_iter().collect();
        if span.len() == group.len() {
            break;
        }
    }
    Ok(gens)
}

/// Seeds `E_ib`, column `0` first, projected onto the orthonormal span `dirs`.
fn seed_candidates(dirs: &[CMatrix], m: usize) -> impl Iterator<Item = CMatrix> + '_ {
    (0..m).flat_map(move |b| (0..m).map(move |i| (i, b))).map(move |(i, b)| {
        let mut out = CMatrix::zeros(m, m);
        for d in dirs {
            let w: C64 = d[(i, b)].conj();
            for (o, x) in out.as_mut_slice().iter_mut().zip(d.as_slice()) {
                *o += w * x;
            }
        }
        out
    })
}

/// Sequentially extracts permutation symmetries of `R` from the null space of
/// the deflated double-commutator problem.
pub fn discover_sequential(r: &CMatrix, config: &DiscoveryConfig) -> Result<DiscoveryResult> {
    let basis = CandidateBasis::of_kind(config.basis, r.require_square()?)?;
    discover_with_basis(r, &basis, config)
}

/// [`discover_sequential`] over an explicit candidate basis.
pub fn discover_with_basis(
    r: &CMatrix,
    basis: &CandidateBasis,
    config: &DiscoveryConfig,
) -> Result<DiscoveryResult> {
    let r = &r.symmetrized(1e-8)?;
    let m = r.require_square()?;
    let scale = r.frobenius_norm().powi(2);
    if scale == 0.0 {
        return Err(Error::Input("cannot search the zero matrix for symmetries".into()));
    }
    if !(config.tau >= 0.0) {
        return Err(Error::Input("tau must be non-negative".into()));
    }
    let max_iters = config.max_iters.unwrap_or(4 * m);
    let cut = config.tau.powi(2).max(LAMBDA_FLOOR) * scale;

    let mut space = DeflationSpace::new();
    space.add(&CMatrix::identity(m));
    let mut search = Search {
        r,
        tau: config.tau,
        cap: config.enumeration_cap,
        generators: Vec::new(),
        residuals: Vec::new(),
        known: HashSet::from([Permutation::identity(m)]),
        closure_complete: true,
        space,
    };
    let mut commutant: Option<Vec<CMatrix>> = None;
    let mut lambda_trace = Vec::new();
    let mut rejected_count = 0;
    let mut iterations = 0;
    let stop = loop {
        if iterations >= max_iters {
            break StopReason::IterationLimit;
        }
        let step = match dc_gevp_step_in(r, basis, &search.space) {
            Ok(s) => s,
            Err(Error::SearchExhausted) => break StopReason::Exhausted,
            Err(e) => return Err(e),
        };
        iterations += 1;
        lambda_trace.push(step.lambda / scale);
        if step.lambda > cut {
            break StopReason::Converged;
        }
        let mut accepted = search.try_accept(round_to_permutation(&phase_normalize(&step.candidate))?)?;
        if !accepted {
            if commutant.is_none() {
                commutant = Some(dc_gevp_step_in(r, basis, &DeflationSpace::new())?.directions_below(cut));
            }
            for seed in seed_candidates(commutant.as_deref().unwrap_or_default(), m) {
                if seed.frobenius_norm() > 1e-12 && search.try_accept(round_to_permutation(&seed)?)? {
                    accepted = true;
                    break;
                }
            }
        }
        if !accepted {
            rejected_count += 1;
            search.space.add(&step.candidate);
        }
    };

    while search.closure_complete && basis.kind() == BasisKind::MatrixUnits {
        match missing_symmetry(r, &search.known, config.tau) {
            Some(p) if search.try_accept(p.clone())? => {}
            _ => break,
        }
    }

    if search.closure_complete && !search.generators.is_empty() {
        search.generators = canonical_generators(&search.known, search.cap)?;
        search.residuals = search
            .generators
            .iter()
            .map(|p| residual_delta(p, r))
            .collect::<Result<_>>()?;
    }

    let degenerate_spectrum = m > 1 && eigen_clusters(&herm_eigvals(r)?, DEFAULT_CLUSTER_TOL)?.len() == 1;
    let group_order = if search.closure_complete {
        Some(search.known.len())
    } else {
        None
    };
    let mut result = DiscoveryResult {
        generators: search.generators,
        residuals: search.residuals,
        group_order,
        alpha: 1.0,
        iterations,
        rejected_count,
        lambda_trace,
        stop,
        degenerate_spectrum,
    };
    result.alpha = coloring_alpha(&result.action(m), r)?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::sample_invariant_cov;
    use crate::groups::*;
    use crate::numkernel::random_psd;

    fn closure_set(gens: &[Permutation], m: usize) -> HashSet<Permutation> {
        if gens.is_empty() {
            return HashSet::from([Permutation::identity(m)]);
        }
        let g = GroupAction::from_generators(gens.to_vec(), "g").unwrap();
        closure_enumerate(&g, 100_000).into_result().unwrap().into_iter().collect()
    }

    #[test]
    fn cyclic_eight_recovered() {
        let g = make_cyclic(8).unwrap();
        let r = sample_invariant_cov(&g, 4);
        let res = discover_sequential(&r, &DiscoveryConfig::default()).unwrap();
        assert_eq!(res.group_order, Some(8));
        assert_eq!(closure_set(&res.generators, 8), closure_set(g.generators(), 8));
        assert_eq!(res.stop, StopReason::Converged);
        assert_eq!(res.generators, [Permutation::parse("(0 1 2 3 4 5 6 7)", Some(8)).unwrap()]);
        assert!(res.residuals.iter().all(|&d| d <= 1e-8));
        assert!((res.alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boolean_three_recovered() {
        let g = make_boolean(3).unwrap();
        let r = sample_invariant_cov(&g, 2);
        let res = discover_sequential(&r, &DiscoveryConfig::default()).unwrap();
        assert_eq!(res.group_order, Some(8));
        assert_eq!(closure_set(&res.generators, 8), closure_set(g.generators(), 8));
    }

    #[test]
    fn generic_matrix_has_no_symmetry() {
        let r = random_psd(6, 9);
        let res = discover_sequential(&r, &DiscoveryConfig::default()).unwrap();
        assert!(res.generators.is_empty());
        assert_eq!(res.group_order, Some(1));
        assert_eq!(res.alpha, 1.0);
        assert!(res.iterations <= 24);
        assert_eq!(res.stop, StopReason::Converged);
    }

    #[test]
    fn identity_input_saturates() {
        let res = discover_sequential(&CMatrix::identity(4), &DiscoveryConfig::default()).unwrap();
        assert!(res.saturated());
        assert!(res.degenerate_spectrum);
        assert_eq!(res.alpha, 1.0);
        assert!(res.iterations <= 16);
    }

    #[test]
    fn identity_reports_adjacent_transpositions() {
        let res = discover_sequential(&CMatrix::identity(5), &DiscoveryConfig::default()).unwrap();
        let shown: Vec<String> = res.generators.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["(3 4)", "(2 3)", "(1 2)", "(0 1)"]);
        assert_eq!(res.group_order, Some(120));
    }

    #[test]
    fn rejects_zero_and_bad_tau() {
        assert!(matches!(
            discover_sequential(&CMatrix::zeros(3, 3), &DiscoveryConfig::default()),
            Err(Error::Input(_))
        ));
        let cfg = DiscoveryConfig {
            tau: f64::NAN,
            ..DiscoveryConfig::default()
        };
        assert!(discover_sequential(&CMatrix::identity(3), &cfg).is_err());
    }

    #[test]
    fn lambda_trace_is_monotone() {
        let r = sample_invariant_cov(&make_dihedral_on_m(6).unwrap(), 3);
        let res = discover_sequential(&r, &DiscoveryConfig::default()).unwrap();
        for w in res.lambda_trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        assert_eq!(res.group_order, Some(12));
    }

    #[test]
    fn shift_basis_finds_rotations_only() {
        let r = sample_invariant_cov(&make_dihedral_on_m(5).unwrap(), 1);
        let cfg = DiscoveryConfig {
            basis: BasisKind::CyclicShifts,
            ..DiscoveryConfig::default()
        };
        let res = discover_sequential(&r, &cfg).unwrap();
        assert_eq!(res.group_order, Some(5));
    }
}
