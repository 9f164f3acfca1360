//! Coupling impartiality test: replay identical tapes on two graphs that
//! differ only in one vertex's votes and require that vertex's win status to
//! match tape-for-tape. Per-tape equality implies the probabilistic
//! definition of impartiality by averaging over tapes, and unlike a
//! statistical test it has no false-pass margin.

use crate::analysis::AnalysisError;
use crate::graph::{Digraph, VertexId};
use crate::mechanisms::MechanismKind;
use crate::tape::RandomTape;

/// A tape on which the probed vertex's win status changed with its votes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub seed: u64,
    pub vertex: VertexId,
    pub original_wins: bool,
    pub modified_wins: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpartialityReport {
    pub tapes_tested: usize,
    pub violations: Vec<Violation>,
}

impl ImpartialityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Replaces `vertex`'s out-neighborhood with `new_out_arcs`, then compares
/// the vertex's win status on the original and modified graphs under every
/// seed in `seeds`.
pub fn impartiality_coupling_test(
    mechanism: &MechanismKind,
    g: &Digraph,
    vertex: VertexId,
    new_out_arcs: &[VertexId],
    seeds: &[u64],
) -> Result<ImpartialityReport, AnalysisError> {
    if seeds.is_empty() {
        return Err(AnalysisError::EmptySeeds);
    }
    if new_out_arcs.contains(&vertex) {
        return Err(AnalysisError::InvalidParameter(format!(
            "vertex {vertex} cannot vote for itself"
        )));
    }
    let modified = g.with_replaced_out_neighborhood(vertex, new_out_arcs)?;
    let mut violations = Vec::new();
    for &seed in seeds {
        let tape = RandomTape::new(seed);
        let original_wins = mechanism.run(g, &tape)?.is_winner(vertex);
        let modified_wins = mechanism.run(&modified, &tape)?.is_winner(vertex);
        if original_wins != modified_wins {
            violations.push(Violation {
                seed,
                vertex,
                original_wins,
                modified_wins,
            });
        }
    }
    Ok(ImpartialityReport {
        tapes_tested: seeds.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_digraph;

    #[test]
    fn permutation_mechanism_passes_on_the_single_arc_graph() {
        // Give u an extra vote for w; u's own win status must not move.
        let g = build_digraph(3, &[(0, 1)]).unwrap();
        let seeds: Vec<u64> = (0..1000).collect();
        let report = impartiality_coupling_test(
            &MechanismKind::Permutation,
            &g,
            VertexId(0),
            &[VertexId(1), VertexId(2)],
            &seeds,
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.tapes_tested, 1000);
    }

    #[test]
    fn baseline_is_caught_on_the_witness_instance() {
        // v wins outright; once v votes back, the tie elects u instead.
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        let report = impartiality_coupling_test(
            &MechanismKind::Baseline,
            &g,
            VertexId(1),
            &[VertexId(0)],
            &[1, 2, 3],
        )
        .unwrap();
        assert_eq!(report.violations.len(), 3);
        let v = report.violations[0];
        assert!(v.original_wins && !v.modified_wins);
    }

    #[test]
    fn empty_seed_list_is_rejected() {
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        assert_eq!(
            impartiality_coupling_test(
                &MechanismKind::Permutation,
                &g,
                VertexId(0),
                &[],
                &[]
            ),
            Err(AnalysisError::EmptySeeds)
        );
    }

    #[test]
    fn self_vote_perturbation_is_rejected() {
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            impartiality_coupling_test(
                &MechanismKind::Permutation,
                &g,
                VertexId(0),
                &[VertexId(0)],
                &[1]
            ),
            Err(AnalysisError::InvalidParameter(_))
        ));
    }
}
