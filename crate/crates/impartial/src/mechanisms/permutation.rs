//! Permutation mechanism: examine vertices in a random order, keeping a
//! provisional leader whose counted votes come only from already-examined,
//! non-leader vertices. Ties go to the newly examined vertex.

use crate::graph::{Digraph, VertexId};
use crate::mechanisms::{Selection, TracePhase, VoteReadTrace};
use crate::tape::RandomTape;

/// Runs the mechanism with a scan order drawn from the tape.
pub fn permutation_mechanism(g: &Digraph, tape: &RandomTape) -> Selection {
    let order = tape.permutation(g.n());
    select_with_order(g, &order)
}

/// Deterministic core: runs the sequential scan over an explicit order.
///
/// `order` must be a permutation of the graph's vertices.
pub fn select_with_order(g: &Digraph, order: &[VertexId]) -> Selection {
    let (selection, _) = run_detailed(g, order);
    selection
}

/// Full run, also returning the counted in-degree of the provisional leader
/// after each examination step. That sequence is non-decreasing, which is
/// what gives the scan its approximation guarantee.
pub(crate) fn run_detailed(g: &Digraph, order: &[VertexId]) -> (Selection, Vec<usize>) {
    let n = g.n();
    assert_eq!(order.len(), n, "order must cover every vertex");
    let mut seen = vec![false; n];
    for &v in order {
        assert!(!seen[v.index()], "order repeats vertex {v}");
        seen[v.index()] = true;
    }

    // counted(x) = in-neighbors of x among examined vertices, leader excluded.
    let mut examined = vec![false; n];
    let counted = |examined: &[bool], x: VertexId, leader: VertexId| -> usize {
        g.in_neighbors(x)
            .iter()
            .filter(|&&u| examined[u.index()] && u != leader)
            .count()
    };

    let mut trace = VoteReadTrace::new();
    let mut leader = order[0];
    examined[leader.index()] = true;
    let mut leader_history = vec![0usize];

    for &candidate in &order[1..] {
        let cand_votes = counted(&examined, candidate, leader);
        let leader_votes = counted(&examined, leader, leader);
        if cand_votes >= leader_votes {
            // The dethroned leader's votes become readable from now on.
            trace.push(leader, TracePhase::Examination);
            leader = candidate;
        } else {
            trace.push(candidate, TracePhase::Examination);
        }
        examined[candidate.index()] = true;
        leader_history.push(counted(&examined, leader, leader));
    }

    (Selection::single(g, leader, trace, false), leader_history)
}
