//! 2-partition mechanism: assign each vertex to one of two groups by a fair
//! coin, count only the votes crossing from the first group into the second,
//! and elect the counted-vote maximizer of the second group.

use crate::graph::{Digraph, VertexId};
use crate::mechanisms::{Selection, TracePhase, VoteReadTrace};
use crate::tape::RandomTape;

/// Runs the mechanism with group assignments drawn from the tape.
pub fn two_partition_mechanism(g: &Digraph, tape: &RandomTape) -> Selection {
    let electable: Vec<bool> = g.vertices().map(|v| tape.partition_coin(v)).collect();
    select_with_partition(g, &electable)
}

/// Deterministic core. `electable[v]` puts `v` in the second group, whose
/// members are the only election candidates; the first group's members are
/// the only counted voters.
///
/// Ties are broken toward the lowest vertex index. If the second group is
/// empty, every vertex has zero counted votes and the same lowest-index rule
/// applied over all vertices elects vertex 0; the run is flagged as a
/// fallback since no vote was read at all.
pub fn select_with_partition(g: &Digraph, electable: &[bool]) -> Selection {
    assert_eq!(electable.len(), g.n());
    let mut trace = VoteReadTrace::new();
    let mut counted = vec![0usize; g.n()];
    for v in g.vertices() {
        if !electable[v.index()] {
            trace.push(v, TracePhase::Partition);
            for &w in g.out_neighbors(v) {
                if electable[w.index()] {
                    counted[w.index()] += 1;
                }
            }
        }
    }
    let mut winner: Option<VertexId> = None;
    let mut best = 0usize;
    for v in g.vertices() {
        if electable[v.index()] && (winner.is_none() || counted[v.index()] > best) {
            winner = Some(v);
            best = counted[v.index()];
        }
    }
    match winner {
        Some(w) => Selection::single(g, w, trace, false),
        None => Selection::single(g, VertexId(0), trace, true),
    }
}
