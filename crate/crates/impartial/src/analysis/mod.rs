//! Measurement tools: exact expectation oracles, Monte-Carlo ratio
//! estimation, the coupling impartiality tester, and empirical checkers for
//! the concentration facts behind the mechanisms' guarantees.

use thiserror::Error;

use crate::graph::Digraph;
use crate::mechanisms::{MechanismKind, ParamError};
use crate::rng::mix64;
use crate::tape::RandomTape;

pub mod concentration;
pub mod exact;
pub mod impartiality;

pub use concentration::{
    balanced_fraction, chernoff_empirical, hypergeometric_tail, is_balanced_permutation,
    well_estimated,
};
pub use exact::{exact_expected_winner_degree_permutation, exact_expected_winner_degree_two_partition};
pub use impartiality::{impartiality_coupling_test, ImpartialityReport, Violation};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("instance too large for exhaustive enumeration: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("need at least one tape seed")]
    EmptySeeds,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Mechanism(#[from] ParamError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Monte-Carlo (or exact) estimate of `E[deg(winner)] / max-degree`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaEstimate {
    pub mean_winner_degree: f64,
    /// Maximum in-degree of the instance.
    pub delta: usize,
    /// `mean_winner_degree / delta`, defined as 1 when `delta` is 0.
    pub ratio: f64,
    pub trials: u64,
    /// 95% normal-approximation half-width; 0 for exact estimates.
    pub ci_halfwidth: f64,
    pub exact: bool,
}

impl AlphaEstimate {
    pub(crate) fn ratio_for(mean: f64, delta: usize) -> f64 {
        if delta == 0 {
            1.0
        } else {
            mean / delta as f64
        }
    }
}

/// Master seed for trial `t` of an experiment seeded with `seed`.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    mix64(seed ^ t.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Integer accumulators for one batch of trials. Sums are exact, so any
/// partition of the trial range yields bit-identical totals.
#[derive(Clone, Copy, Debug, Default)]
struct TrialSums {
    /// Sum over trials of the per-trial total winner degree.
    degree_sum: u128,
    /// Sum of squares of the per-trial totals.
    degree_sq_sum: u128,
}

impl TrialSums {
    fn add(&mut self, other: TrialSums) {
        self.degree_sum += other.degree_sum;
        self.degree_sq_sum += other.degree_sq_sum;
    }
}

fn run_trials(
    mechanism: &MechanismKind,
    g: &Digraph,
    seed: u64,
    range: std::ops::Range<u64>,
) -> Result<(TrialSums, usize), AnalysisError> {
    let mut sums = TrialSums::default();
    let mut winners_per_trial = 0;
    for t in range {
        let tape = RandomTape::new(trial_seed(seed, t));
        let selection = mechanism.run(g, &tape)?;
        debug_assert!(selection
            .winner_in_degrees
            .iter()
            .all(|&d| d <= g.max_in_degree()));
        winners_per_trial = selection.winners.len();
        let total: u128 = selection.winner_in_degrees.iter().map(|&d| d as u128).sum();
        sums.degree_sum += total;
        sums.degree_sq_sum += total * total;
    }
    Ok((sums, winners_per_trial))
}

fn estimate_from_sums(
    sums: TrialSums,
    trials: u64,
    winners_per_trial: usize,
    delta: usize,
) -> AlphaEstimate {
    // Per-trial statistic is the mean winner degree of that trial; with a
    // fixed instance the winner count is the same every trial, so the
    // integer sums can be rescaled after the fact.
    let c = winners_per_trial.max(1) as f64;
    let tf = trials as f64;
    let mean = sums.degree_sum as f64 / (tf * c);
    let mean_sq = sums.degree_sq_sum as f64 / (tf * c * c);
    let variance = if trials > 1 {
        ((mean_sq - mean * mean) * tf / (tf - 1.0)).max(0.0)
    } else {
        0.0
    };
    let ci_halfwidth = 1.96 * variance.sqrt() / tf.sqrt();
    AlphaEstimate {
        mean_winner_degree: mean,
        delta,
        ratio: AlphaEstimate::ratio_for(mean, delta),
        trials,
        ci_halfwidth,
        exact: false,
    }
}

/// Runs `trials` independent tapes of the mechanism and estimates the
/// approximation ratio. Tape `t` is seeded by `trial_seed(seed, t)`.
pub fn monte_carlo_alpha(
    mechanism: &MechanismKind,
    g: &Digraph,
    trials: u64,
    seed: u64,
) -> Result<AlphaEstimate, AnalysisError> {
    monte_carlo_alpha_parallel(mechanism, g, trials, seed, 1)
}

/// Same estimate, fanned out over `jobs` threads. Accumulation is in exact
/// integer arithmetic, so the result is byte-identical for every `jobs`.
pub fn monte_carlo_alpha_parallel(
    mechanism: &MechanismKind,
    g: &Digraph,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<AlphaEstimate, AnalysisError> {
    if trials == 0 {
        return Err(AnalysisError::ZeroTrials);
    }
    let jobs = jobs.max(1).min(trials as usize);
    if jobs == 1 {
        let (sums, winners) = run_trials(mechanism, g, seed, 0..trials)?;
        return Ok(estimate_from_sums(sums, trials, winners, g.max_in_degree()));
    }

    let chunk = trials.div_ceil(jobs as u64);
    let results: Vec<Result<(TrialSums, usize), AnalysisError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|j| {
                let lo = j * chunk;
                let hi = ((j + 1) * chunk).min(trials);
                scope.spawn(move || run_trials(mechanism, g, seed, lo..hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut sums = TrialSums::default();
    let mut winners_per_trial = 0;
    for result in results {
        let (part, winners) = result?;
        sums.add(part);
        winners_per_trial = winners_per_trial.max(winners);
    }
    Ok(estimate_from_sums(sums, trials, winners_per_trial, g.max_in_degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_digraph, uniform_random};

    #[test]
    fn baseline_has_unit_ratio_and_zero_ci() {
        let g = build_digraph(4, &[(0, 1), (2, 1), (3, 1)]).unwrap();
        let est = monte_carlo_alpha(&MechanismKind::Baseline, &g, 500, 7).unwrap();
        assert_eq!(est.ratio, 1.0);
        assert_eq!(est.ci_halfwidth, 0.0);
        assert_eq!(est.mean_winner_degree, 3.0);
    }

    #[test]
    fn arcless_graph_has_ratio_one_by_convention() {
        let g = build_digraph(3, &[]).unwrap();
        let est = monte_carlo_alpha(&MechanismKind::Permutation, &g, 100, 3).unwrap();
        assert_eq!(est.delta, 0);
        assert_eq!(est.ratio, 1.0);
        assert_eq!(est.mean_winner_degree, 0.0);
    }

    #[test]
    fn zero_trials_is_rejected() {
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        assert_eq!(
            monte_carlo_alpha(&MechanismKind::Permutation, &g, 0, 1),
            Err(AnalysisError::ZeroTrials)
        );
    }

    #[test]
    fn single_arc_permutation_ratio_is_near_half() {
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        let est = monte_carlo_alpha(&MechanismKind::Permutation, &g, 100_000, 11).unwrap();
        assert!(
            (est.ratio - 0.5).abs() <= 3.0 * est.ci_halfwidth,
            "ratio {} ci {}",
            est.ratio,
            est.ci_halfwidth
        );
    }

    #[test]
    fn parallel_estimate_is_bit_identical() {
        let g = uniform_random(18, 0.3, 5).unwrap();
        let mech = MechanismKind::Slicing { eps: 0.3 };
        let sequential = monte_carlo_alpha(&mech, &g, 501, 42).unwrap();
        for jobs in [2, 3, 8] {
            let parallel = monte_carlo_alpha_parallel(&mech, &g, 501, 42, jobs).unwrap();
            assert_eq!(sequential, parallel);
        }
    }

    #[test]
    fn winner_degree_support_is_respected() {
        for seed in 0..20 {
            let g = uniform_random(10, 0.4, seed).unwrap();
            let est =
                monte_carlo_alpha(&MechanismKind::TwoPartition, &g, 2_000, seed).unwrap();
            assert!(est.mean_winner_degree >= 0.0);
            assert!(est.mean_winner_degree <= g.max_in_degree() as f64);
        }
    }
}
