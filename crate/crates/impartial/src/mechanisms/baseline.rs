//! Non-impartial reference: elect the true max-in-degree vertex. Achieves
//! ratio 1 by construction and serves as the deliberate counterexample for
//! the coupling impartiality test.

use crate::graph::Digraph;
use crate::mechanisms::{Selection, TracePhase, VoteReadTrace};

/// Elects the vertex of maximum in-degree, lowest index on ties. Reads every
/// vertex's votes, so the winner always appears in its own trace.
pub fn max_indegree_baseline(g: &Digraph) -> Selection {
    let mut trace = VoteReadTrace::new();
    let mut winner = g.vertices().next().expect("graphs are nonempty");
    for v in g.vertices() {
        trace.push(v, TracePhase::Baseline);
        if g.in_degree(v) > g.in_degree(winner) {
            winner = v;
        }
    }
    Selection::single(g, winner, trace, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_digraph, tight_example, VertexId};

    #[test]
    fn picks_the_vote_target() {
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        let sel = max_indegree_baseline(&g);
        assert_eq!(sel.winners, vec![VertexId(1)]);
    }

    #[test]
    fn arcless_graph_ties_break_low() {
        let g = build_digraph(3, &[]).unwrap();
        let sel = max_indegree_baseline(&g);
        assert_eq!(sel.winners, vec![VertexId(0)]);
    }

    #[test]
    fn finds_the_planted_sink() {
        let g = tight_example(2, 0.2).unwrap();
        let sel = max_indegree_baseline(&g);
        assert_eq!(sel.winners, vec![VertexId(g.n() - 1)]);
        assert_eq!(sel.winner_in_degrees, vec![3]);
        assert!(sel.trace.contains(sel.winners[0]));
    }
}
