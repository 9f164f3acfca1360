//! Empirical checkers for the concentration behavior the mechanisms lean on:
//! balanced prefixes of random permutations, hypergeometric intersection
//! tails, and the Chernoff bound for Bernoulli sums.

use crate::analysis::{trial_seed, AnalysisError};
use crate::rng::Stream;

/// Whether every length-`k` prefix of `permutation` contains at least
/// `(k / n - eps) * delta` of the distinguished elements `0..delta`.
pub fn is_balanced_permutation(
    permutation: &[usize],
    delta: usize,
    eps: f64,
) -> Result<bool, AnalysisError> {
    let n = permutation.len();
    if delta > n {
        return Err(AnalysisError::InvalidParameter(format!(
            "delta = {delta} exceeds n = {n}"
        )));
    }
    let mut hits = 0usize;
    for (k, &element) in permutation.iter().enumerate() {
        if element < delta {
            hits += 1;
        }
        let required = ((k + 1) as f64 / n as f64 - eps) * delta as f64;
        if (hits as f64) < required {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fraction of `trials` uniform permutations of `0..n` that are balanced in
/// the sense of [`is_balanced_permutation`].
pub fn balanced_fraction(
    n: usize,
    delta: usize,
    eps: f64,
    trials: u64,
    seed: u64,
) -> Result<f64, AnalysisError> {
    if delta > n {
        return Err(AnalysisError::InvalidParameter(format!(
            "delta = {delta} exceeds n = {n}"
        )));
    }
    if trials == 0 {
        return Err(AnalysisError::ZeroTrials);
    }
    let mut permutation: Vec<usize> = (0..n).collect();
    let mut balanced = 0u64;
    for t in 0..trials {
        let mut stream = Stream::new(trial_seed(seed, t));
        stream.shuffle(&mut permutation);
        if is_balanced_permutation(&permutation, delta, eps)? {
            balanced += 1;
        }
    }
    Ok(balanced as f64 / trials as f64)
}

/// Empirical probability that a uniform `delta`-subset `X` of `0..n` has
/// `| |X ∩ [k]| - k * delta / n | >= eps1 * delta`.
pub fn hypergeometric_tail(
    n: usize,
    delta: usize,
    k: usize,
    eps1: f64,
    trials: u64,
    seed: u64,
) -> Result<f64, AnalysisError> {
    if delta > n {
        return Err(AnalysisError::InvalidParameter(format!(
            "delta = {delta} exceeds n = {n}"
        )));
    }
    if k > n {
        return Err(AnalysisError::InvalidParameter(format!(
            "k = {k} exceeds n = {n}"
        )));
    }
    if eps1 <= 0.0 {
        return Err(AnalysisError::InvalidParameter(format!(
            "eps1 must be positive, got {eps1}"
        )));
    }
    if trials == 0 {
        return Err(AnalysisError::ZeroTrials);
    }
    let expected = (k * delta) as f64 / n as f64;
    let margin = eps1 * delta as f64;
    let mut pool: Vec<usize> = (0..n).collect();
    let mut swaps: Vec<(usize, usize)> = Vec::with_capacity(delta);
    let mut deviations = 0u64;
    for t in 0..trials {
        let mut stream = Stream::new(trial_seed(seed, t));
        // Partial Fisher-Yates: after `delta` steps the tail of the pool is
        // a uniform delta-subset. Swaps are recorded and undone so the pool
        // need not be rebuilt per trial.
        swaps.clear();
        let mut intersection = 0usize;
        for i in 0..delta {
            let last = n - 1 - i;
            let j = stream.next_below(last as u64 + 1) as usize;
            pool.swap(last, j);
            swaps.push((last, j));
            if pool[last] < k {
                intersection += 1;
            }
        }
        for &(a, b) in swaps.iter().rev() {
            pool.swap(a, b);
        }
        if (intersection as f64 - expected).abs() >= margin {
            deviations += 1;
        }
    }
    Ok(deviations as f64 / trials as f64)
}

/// Empirical deviation probability of a sum of `n` Bernoulli(`p`) variables
/// against the analytic bound `exp(-delta^2 * p * n / 3)`.
///
/// Returns `(empirical, bound)` where `empirical` is the fraction of trials
/// with `|sum - p * n| >= delta * p * n`. With `p = 0` the sum is
/// identically its mean and no trial counts as a deviation.
pub fn chernoff_empirical(
    n: usize,
    p: f64,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64), AnalysisError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(AnalysisError::InvalidParameter(format!(
            "p must lie in [0, 1], got {p}"
        )));
    }
    if delta < 0.0 {
        return Err(AnalysisError::InvalidParameter(format!(
            "delta must be non-negative, got {delta}"
        )));
    }
    if trials == 0 {
        return Err(AnalysisError::ZeroTrials);
    }
    let mean = p * n as f64;
    let margin = delta * mean;
    let bound = (-delta * delta * mean / 3.0).exp();
    if p == 0.0 {
        return Ok((0.0, bound));
    }
    let mut deviations = 0u64;
    for t in 0..trials {
        let mut stream = Stream::new(trial_seed(seed, t));
        let mut sum = 0usize;
        for _ in 0..n {
            if stream.next_unit() < p {
                sum += 1;
            }
        }
        if (sum as f64 - mean).abs() >= margin {
            deviations += 1;
        }
    }
    Ok((deviations as f64 / trials as f64, bound))
}

/// Whether an estimate `d_e` of a true degree `d` is within relative error
/// `eps_hat`: `|d_e - d| <= eps_hat * d`.
pub fn well_estimated(d_e: f64, d: usize, eps_hat: f64) -> bool {
    (d_e - d as f64).abs() <= eps_hat * d as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_permutation_is_balanced() {
        let pi: Vec<usize> = (0..10).collect();
        assert!(is_balanced_permutation(&pi, 10, 0.01).unwrap());
    }

    #[test]
    fn tail_heavy_permutation_is_unbalanced() {
        // Distinguished elements {0, 1} in the last two positions: at k = 8
        // the prefix holds 0 of them but needs (0.8 - 0.1) * 2 = 1.4.
        let pi = vec![2, 3, 4, 5, 6, 7, 8, 9, 0, 1];
        assert!(!is_balanced_permutation(&pi, 2, 0.1).unwrap());
    }

    #[test]
    fn huge_eps_balances_everything() {
        let pi = vec![2, 3, 4, 5, 6, 7, 8, 9, 0, 1];
        assert!(is_balanced_permutation(&pi, 2, 1.0).unwrap());
    }

    #[test]
    fn balanced_rejects_oversized_delta() {
        let pi: Vec<usize> = (0..5).collect();
        assert!(is_balanced_permutation(&pi, 6, 0.1).is_err());
        assert!(balanced_fraction(5, 6, 0.1, 10, 0).is_err());
    }

    #[test]
    fn full_set_is_always_balanced() {
        let frac = balanced_fraction(40, 40, 0.05, 200, 9).unwrap();
        assert_eq!(frac, 1.0);
    }

    #[test]
    fn full_subset_never_deviates() {
        // X = [n] forces |X ∩ [k]| = k = k * delta / n exactly.
        let tail = hypergeometric_tail(50, 50, 20, 0.05, 500, 3).unwrap();
        assert_eq!(tail, 0.0);
    }

    #[test]
    fn hypergeometric_rejects_bad_params() {
        assert!(hypergeometric_tail(10, 11, 3, 0.1, 10, 0).is_err());
        assert!(hypergeometric_tail(10, 5, 11, 0.1, 10, 0).is_err());
        assert!(hypergeometric_tail(10, 5, 3, 0.0, 10, 0).is_err());
    }

    #[test]
    fn hypergeometric_tail_matches_direct_resampling() {
        // Cross-check the swap-undo sampling against a fresh pool per trial.
        let n = 30;
        let delta = 10;
        let k = 12;
        let expected = (k * delta) as f64 / n as f64;
        let margin = 0.15 * delta as f64;
        let trials = 4000u64;
        let mut deviations = 0u64;
        for t in 0..trials {
            let mut pool: Vec<usize> = (0..n).collect();
            let mut stream = Stream::new(trial_seed(77, t));
            let mut hit = 0usize;
            for i in 0..delta {
                let last = n - 1 - i;
                let j = stream.next_below(last as u64 + 1) as usize;
                pool.swap(last, j);
                if pool[last] < k {
                    hit += 1;
                }
            }
            if (hit as f64 - expected).abs() >= margin {
                deviations += 1;
            }
        }
        let direct = deviations as f64 / trials as f64;
        let reused = hypergeometric_tail(n, delta, k, 0.15, trials, 77).unwrap();
        assert_eq!(direct, reused);
    }

    #[test]
    fn chernoff_degenerate_cases() {
        let (empirical, bound) = chernoff_empirical(100, 0.0, 0.5, 100, 1).unwrap();
        assert_eq!(empirical, 0.0);
        assert_eq!(bound, 1.0);

        let (empirical, bound) = chernoff_empirical(100, 0.5, 0.0, 100, 1).unwrap();
        assert_eq!(empirical, 1.0);
        assert_eq!(bound, 1.0);
    }

    #[test]
    fn chernoff_bound_holds_at_moderate_scale() {
        let (empirical, bound) = chernoff_empirical(500, 0.5, 0.25, 5_000, 4).unwrap();
        assert!(empirical <= bound, "empirical {empirical} > bound {bound}");
    }

    #[test]
    fn well_estimated_examples() {
        assert!(well_estimated(100.0, 100, 0.0));
        assert!(well_estimated(105.0, 100, 0.05));
        assert!(!well_estimated(110.0, 100, 0.05));
        assert!(well_estimated(0.0, 0, 0.5));
    }
}
