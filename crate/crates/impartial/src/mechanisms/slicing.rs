//! Slicing mechanism: sample a fraction of the vertices to estimate
//! in-degrees, band the unsampled vertices into estimated-degree slices,
//! then reveal slices in increasing order while tracking a provisional
//! winner whose own votes stay sealed.
//!
//! Banding is carried out on the integer sampled-in-degree counts (the
//! common `1/eps` factor of the estimates cancels against the slice
//! thresholds), so slice membership never hinges on a float division.

use std::collections::BTreeMap;

use crate::graph::{Digraph, VertexId};
use crate::mechanisms::{ParamError, Selection, TracePhase, VoteReadTrace};
use crate::tape::RandomTape;

/// Number of slices used for a given `eps`: `ceil(1 / eps^2)`.
pub fn slice_count(eps: f64) -> usize {
    (1.0 / (eps * eps)).ceil() as usize
}

/// Result of the sampling phase: the sampled set and, for every unsampled
/// vertex, its number of sampled in-neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePhase {
    sampled: Vec<bool>,
    counts: BTreeMap<VertexId, usize>,
}

impl SamplePhase {
    pub fn is_sampled(&self, v: VertexId) -> bool {
        self.sampled[v.index()]
    }

    pub fn sampled_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.sampled
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| VertexId(i))
    }

    pub fn unsampled_count(&self) -> usize {
        self.counts.len()
    }

    /// Sampled-in-neighbor counts, keyed by unsampled vertex.
    pub fn counts(&self) -> &BTreeMap<VertexId, usize> {
        &self.counts
    }

    /// Estimated in-degrees `count / eps`, keyed by unsampled vertex.
    pub fn estimated_degrees(&self, eps: f64) -> BTreeMap<VertexId, f64> {
        self.counts
            .iter()
            .map(|(&v, &k)| (v, k as f64 / eps))
            .collect()
    }
}

/// Draws the sample (each vertex independently with probability `eps`) and
/// counts sampled in-neighbors of every unsampled vertex.
pub fn sample_phase(g: &Digraph, eps: f64, tape: &RandomTape) -> SamplePhase {
    let sampled: Vec<bool> = g.vertices().map(|v| tape.sample_coin(v, eps)).collect();
    let mut counts = BTreeMap::new();
    for v in g.vertices() {
        if !sampled[v.index()] {
            let k = g
                .in_neighbors(v)
                .iter()
                .filter(|u| sampled[u.index()])
                .count();
            counts.insert(v, k);
        }
    }
    SamplePhase { sampled, counts }
}

/// 1-based index of the estimated-degree band holding `value`, for bands of
/// width `eps^2 * max`: the smallest `i` with `value < i * eps^2 * max`,
/// except that the top band is closed above. `max <= 0` puts everything in
/// band 1.
pub fn band_index(value: f64, max: f64, eps: f64) -> usize {
    let tau = slice_count(eps);
    if !(max > 0.0) {
        return 1;
    }
    let unit = eps * eps * max;
    let below = |i: usize| value < i as f64 * unit;
    let mut i = ((value / unit) as usize).saturating_add(1).clamp(1, tau);
    while i > 1 && below(i - 1) {
        i -= 1;
    }
    while i < tau && !below(i) {
        i += 1;
    }
    i
}

/// Partition of the unsampled vertices into estimated-degree bands.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceAssignment {
    tau: usize,
    slices: Vec<Vec<VertexId>>,
    max_count: usize,
    delta_e: f64,
    d_e: BTreeMap<VertexId, f64>,
}

impl SliceAssignment {
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Slices in increasing band order; `slices()[i]` is band `i + 1`.
    /// Together they cover every unsampled vertex exactly once.
    pub fn slices(&self) -> &[Vec<VertexId>] {
        &self.slices
    }

    /// Largest sampled-in-neighbor count (integer numerator of `delta_e`).
    pub fn max_count(&self) -> usize {
        self.max_count
    }

    /// Maximum estimated degree.
    pub fn delta_e(&self) -> f64 {
        self.delta_e
    }

    /// Estimated degrees, keyed by unsampled vertex.
    pub fn estimated_degrees(&self) -> &BTreeMap<VertexId, f64> {
        &self.d_e
    }
}

/// Bands unsampled vertices by their sampled-in-neighbor counts.
pub fn slice_assign(counts: &BTreeMap<VertexId, usize>, eps: f64) -> SliceAssignment {
    let tau = slice_count(eps);
    let max_count = counts.values().copied().max().unwrap_or(0);
    let mut slices = vec![Vec::new(); tau];
    for (&v, &k) in counts {
        let band = band_index(k as f64, max_count as f64, eps);
        slices[band - 1].push(v);
    }
    SliceAssignment {
        tau,
        slices,
        max_count,
        delta_e: max_count as f64 / eps,
        d_e: counts
            .iter()
            .map(|(&v, &k)| (v, k as f64 / eps))
            .collect(),
    }
}

/// Mutable election bookkeeping: the revealed set, per-vertex counted votes
/// from revealed voters, and the disclosure trace.
struct Election<'g> {
    g: &'g Digraph,
    revealed: Vec<bool>,
    counted: Vec<usize>,
    trace: VoteReadTrace,
}

impl<'g> Election<'g> {
    fn new(g: &'g Digraph) -> Self {
        Election {
            g,
            revealed: vec![false; g.n()],
            counted: vec![0; g.n()],
            trace: VoteReadTrace::new(),
        }
    }

    fn reveal(&mut self, v: VertexId, phase: TracePhase) {
        if !self.revealed[v.index()] {
            self.revealed[v.index()] = true;
            self.trace.push(v, phase);
            for &w in self.g.out_neighbors(v) {
                self.counted[w.index()] += 1;
            }
        }
    }

    /// Unrevealed vertex with the most counted votes, lowest index on ties.
    fn leader(&self) -> Option<VertexId> {
        let mut best: Option<VertexId> = None;
        let mut votes = 0usize;
        for v in self.g.vertices() {
            if !self.revealed[v.index()] && (best.is_none() || self.counted[v.index()] > votes) {
                best = Some(v);
                votes = self.counted[v.index()];
            }
        }
        best
    }

    /// Up to `c` unrevealed vertices ranked by counted votes (descending),
    /// lowest index first among equals.
    fn top(&self, c: usize) -> Vec<VertexId> {
        let mut ranked: Vec<VertexId> = Vec::with_capacity(c + 1);
        for v in self.g.vertices() {
            if self.revealed[v.index()] {
                continue;
            }
            // Ascending scan order makes "strictly more votes" the only way
            // to displace an earlier (lower-index) entry.
            let pos = ranked
                .iter()
                .position(|&u| self.counted[v.index()] > self.counted[u.index()])
                .unwrap_or(ranked.len());
            if pos < c {
                ranked.insert(pos, v);
                ranked.truncate(c);
            }
        }
        ranked
    }
}

/// Single-winner slicing mechanism.
pub fn slicing_mechanism(
    g: &Digraph,
    eps: f64,
    tape: &RandomTape,
) -> Result<Selection, ParamError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ParamError::InvalidEps(eps));
    }
    let phase = sample_phase(g, eps, tape);
    let assignment = slice_assign(phase.counts(), eps);
    let mut state = Election::new(g);
    for v in phase.sampled_vertices() {
        state.reveal(v, TracePhase::Sample);
    }

    let fallback = |state: Election| {
        let winner = tape.fallback_stream().next_vertex(g.n());
        Selection::single(g, winner, state.trace, true)
    };

    // Every vertex sampled: nothing is electable.
    let Some(mut leader) = state.leader() else {
        return Ok(fallback(state));
    };

    for round in 1..=assignment.tau() {
        let slice = &assignment.slices()[round - 1];
        for &v in slice {
            if v != leader && tape.reveal_coin(v, eps) {
                state.reveal(v, TracePhase::Slice(round));
            }
        }
        let Some(candidate) = state.leader() else {
            return Ok(fallback(state));
        };
        // Disclose the slice and the outgoing leader, sparing the candidate.
        for &v in slice {
            if v != candidate {
                state.reveal(v, TracePhase::Slice(round));
            }
        }
        if leader != candidate {
            state.reveal(leader, TracePhase::Slice(round));
        }
        let Some(next_leader) = state.leader() else {
            return Ok(fallback(state));
        };
        if candidate != next_leader {
            state.reveal(candidate, TracePhase::Slice(round));
        }
        leader = next_leader;
    }

    Ok(Selection::single(g, leader, state.trace, false))
}

/// Multi-winner variant: every provisional-winner selection takes the top
/// `winners` unrevealed vertices by counted votes instead of a single one.
///
/// If fewer than `winners` vertices are electable, the output is padded with
/// distinct uniform draws from the fallback stream (capped at `n` winners in
/// total) and the run is flagged as a fallback.
pub fn slicing_multiwinner(
    g: &Digraph,
    eps: f64,
    winners: usize,
    tape: &RandomTape,
) -> Result<Selection, ParamError> {
    if winners < 1 {
        return Err(ParamError::InvalidWinnerCount(winners));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ParamError::InvalidEps(eps));
    }
    let phase = sample_phase(g, eps, tape);
    let assignment = slice_assign(phase.counts(), eps);
    let mut state = Election::new(g);
    for v in phase.sampled_vertices() {
        state.reveal(v, TracePhase::Sample);
    }

    let mut leaders = state.top(winners);
    for round in 1..=assignment.tau() {
        let slice = &assignment.slices()[round - 1];
        for &v in slice {
            if !leaders.contains(&v) && tape.reveal_coin(v, eps) {
                state.reveal(v, TracePhase::Slice(round));
            }
        }
        let candidates = state.top(winners);
        for &v in slice {
            if !candidates.contains(&v) {
                state.reveal(v, TracePhase::Slice(round));
            }
        }
        for &y in &leaders {
            if !candidates.contains(&y) {
                state.reveal(y, TracePhase::Slice(round));
            }
        }
        let next_leaders = state.top(winners);
        for &y in &candidates {
            if !next_leaders.contains(&y) {
                state.reveal(y, TracePhase::Slice(round));
            }
        }
        leaders = next_leaders;
    }

    let mut elected = leaders;
    let target = winners.min(g.n());
    let fallback_used = elected.len() < target;
    if fallback_used {
        let mut stream = tape.fallback_stream();
        while elected.len() < target {
            let v = stream.next_vertex(g.n());
            if !elected.contains(&v) {
                elected.push(v);
            }
        }
    }
    Ok(Selection {
        winner_in_degrees: elected.iter().map(|&v| g.in_degree(v)).collect(),
        winners: elected,
        trace: state.trace,
        fallback_used,
    })
}
