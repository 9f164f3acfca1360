//! Selection mechanisms over vote digraphs.
//!
//! Each mechanism is a pure function of `(graph, tape)`: replaying the same
//! tape on the same graph yields an identical [`Selection`]. Runs are
//! instrumented with a [`VoteReadTrace`] recording every vertex whose
//! outgoing votes were disclosed to the mechanism, in disclosure order.
//! Impartial mechanisms never read the eventual winner's votes, so the
//! winner must be absent from the trace unless a fallback path fired.

use std::fmt;

use thiserror::Error;

use crate::graph::{Digraph, VertexId};
use crate::tape::RandomTape;

pub mod baseline;
pub mod permutation;
pub mod slicing;
pub mod two_partition;

pub use baseline::max_indegree_baseline;
pub use permutation::{permutation_mechanism, select_with_order};
pub use slicing::{
    band_index, sample_phase, slice_assign, slice_count, slicing_mechanism, slicing_multiwinner,
    SamplePhase, SliceAssignment,
};
pub use two_partition::{select_with_partition, two_partition_mechanism};

/// Stage of a run during which a vertex's votes were read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TracePhase {
    /// Initial sampling of the slicing mechanism.
    Sample,
    /// Election round of the slicing mechanism (1-based slice index).
    Slice(usize),
    /// Group assignment of the 2-partition mechanism.
    Partition,
    /// Sequential scan of the permutation mechanism.
    Examination,
    /// Non-impartial reference mechanism; reads everyone.
    Baseline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub vertex: VertexId,
    pub phase: TracePhase,
}

/// Append-only log of vote disclosures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VoteReadTrace {
    events: Vec<TraceEvent>,
}

impl VoteReadTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push(&mut self, vertex: VertexId, phase: TracePhase) {
        self.events.push(TraceEvent { vertex, phase });
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.events.iter().any(|e| e.vertex == v)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Outcome of a mechanism run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    /// Elected vertices; a single entry except for multi-winner runs.
    pub winners: Vec<VertexId>,
    /// True in-degrees of the winners, index-aligned with `winners`.
    pub winner_in_degrees: Vec<usize>,
    pub trace: VoteReadTrace,
    /// Set when a degenerate case (no electable vertex, winner padding)
    /// forced a draw from the fallback stream.
    pub fallback_used: bool,
}

impl Selection {
    pub(crate) fn single(g: &Digraph, winner: VertexId, trace: VoteReadTrace, fallback: bool) -> Self {
        Selection {
            winner_in_degrees: vec![g.in_degree(winner)],
            winners: vec![winner],
            trace,
            fallback_used: fallback,
        }
    }

    pub fn is_winner(&self, v: VertexId) -> bool {
        self.winners.contains(&v)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("eps must lie strictly inside (0, 1), got {0}")]
    InvalidEps(f64),
    #[error("winner count must be at least 1, got {0}")]
    InvalidWinnerCount(usize),
}

/// Identifier plus parameters for one of the selection mechanisms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MechanismKind {
    Baseline,
    Permutation,
    TwoPartition,
    Slicing { eps: f64 },
    SlicingMultiwinner { eps: f64, winners: usize },
}

impl MechanismKind {
    /// Whether the mechanism is supposed to pass the coupling impartiality
    /// test. The max-in-degree baseline is the deliberate counterexample.
    pub fn claims_impartial(&self) -> bool {
        !matches!(self, MechanismKind::Baseline)
    }

    pub fn run(&self, g: &Digraph, tape: &RandomTape) -> Result<Selection, ParamError> {
        match *self {
            MechanismKind::Baseline => Ok(max_indegree_baseline(g)),
            MechanismKind::Permutation => Ok(permutation_mechanism(g, tape)),
            MechanismKind::TwoPartition => Ok(two_partition_mechanism(g, tape)),
            MechanismKind::Slicing { eps } => slicing_mechanism(g, eps, tape),
            MechanismKind::SlicingMultiwinner { eps, winners } => {
                slicing_multiwinner(g, eps, winners, tape)
            }
        }
    }
}

impl fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MechanismKind::Baseline => write!(f, "baseline"),
            MechanismKind::Permutation => write!(f, "permutation"),
            MechanismKind::TwoPartition => write!(f, "two-partition"),
            MechanismKind::Slicing { eps } => write!(f, "slicing[eps={eps}]"),
            MechanismKind::SlicingMultiwinner { eps, winners } => {
                write!(f, "slicing-multi[eps={eps} c={winners}]")
            }
        }
    }
}
