//! Exact expectation oracles by exhaustive enumeration.
//!
//! These deliberately do not reuse the mechanism implementations: they
//! re-derive each outcome from bitmask arithmetic, so a bug in the
//! incremental mechanism code cannot silently agree with its own oracle.

use itertools::Itertools;
use num_rational::Ratio;

use crate::analysis::AnalysisError;
use crate::graph::Digraph;

/// Enumeration limit for permutations (`n!` outcomes).
pub const MAX_PERMUTATION_VERTICES: usize = 9;
/// Enumeration limit for bipartitions (`2^n` outcomes).
pub const MAX_PARTITION_VERTICES: usize = 20;

fn in_masks(g: &Digraph) -> Vec<u32> {
    let mut masks = vec![0u32; g.n()];
    for &(u, v) in g.arcs() {
        masks[v.index()] |= 1 << u.index();
    }
    masks
}

/// Expected winner in-degree of the permutation mechanism, averaged exactly
/// over all `n!` scan orders.
pub fn exact_expected_winner_degree_permutation(
    g: &Digraph,
) -> Result<Ratio<u64>, AnalysisError> {
    let n = g.n();
    if n > MAX_PERMUTATION_VERTICES {
        return Err(AnalysisError::TooLarge {
            n,
            limit: MAX_PERMUTATION_VERTICES,
        });
    }
    let masks = in_masks(g);
    let mut total: u64 = 0;
    let mut orders: u64 = 0;
    for order in (0..n).permutations(n) {
        let mut prefix: u32 = 0;
        let mut leader = order[0];
        prefix |= 1 << leader;
        for &candidate in &order[1..] {
            let readable = prefix & !(1u32 << leader);
            let cand_votes = (masks[candidate] & readable).count_ones();
            let leader_votes = (masks[leader] & readable).count_ones();
            if cand_votes >= leader_votes {
                leader = candidate;
            }
            prefix |= 1 << candidate;
        }
        total += masks[leader].count_ones() as u64;
        orders += 1;
    }
    Ok(Ratio::new(total, orders))
}

/// Expected winner in-degree of the 2-partition mechanism, averaged exactly
/// over all `2^n` group assignments.
///
/// Bit `v` of a mask marks `v` electable. Within each assignment the winner
/// maximizes votes from non-electable vertices, lowest index on ties; the
/// all-voters assignment has no electable vertex and degenerates to vertex 0
/// (zero counted votes everywhere, same lowest-index rule).
pub fn exact_expected_winner_degree_two_partition(
    g: &Digraph,
) -> Result<Ratio<u64>, AnalysisError> {
    let n = g.n();
    if n > MAX_PARTITION_VERTICES {
        return Err(AnalysisError::TooLarge {
            n,
            limit: MAX_PARTITION_VERTICES,
        });
    }
    let masks = in_masks(g);
    let assignments: u64 = 1 << n;
    let mut total: u64 = 0;
    for electable in 0..assignments {
        let electable = electable as u32;
        let mut winner = 0usize;
        let mut best = 0u32;
        let mut found = false;
        for v in 0..n {
            if electable & (1 << v) == 0 {
                continue;
            }
            let counted = (masks[v] & !electable).count_ones();
            if !found || counted > best {
                winner = v;
                best = counted;
                found = true;
            }
        }
        total += masks[winner].count_ones() as u64;
    }
    Ok(Ratio::new(total, assignments))
}
