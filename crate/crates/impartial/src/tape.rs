//! Seeded, vertex-keyed randomness for mechanism runs.
//!
//! Every coin is a pure function of `(master_seed, purpose, vertex)`: it does
//! not depend on the graph's arcs or on the order in which coins are asked
//! for. Replaying one tape on two graphs that differ only in one vertex's
//! votes therefore flips no coin anywhere, which is what makes the coupling
//! impartiality test exact rather than statistical.

use crate::graph::VertexId;
use crate::rng::{mix64, unit_f64, Stream};

const PURPOSE_SAMPLE: u64 = 0x53414d50; // per-vertex sampling coin
const PURPOSE_REVEAL: u64 = 0x5245564c; // per-vertex reveal coin
const PURPOSE_PARTITION: u64 = 0x50415254; // per-vertex group coin
const PURPOSE_PERMUTATION: u64 = 0x5045524d; // scan-order stream
const PURPOSE_FALLBACK: u64 = 0x46414c4c; // degenerate-case stream

/// One replayable source of randomness for a single mechanism run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTape {
    master_seed: u64,
}

impl RandomTape {
    pub fn new(master_seed: u64) -> Self {
        RandomTape { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    fn vertex_unit(&self, purpose: u64, v: VertexId) -> f64 {
        let keyed = mix64(self.master_seed ^ mix64(purpose));
        unit_f64(mix64(keyed ^ (v.index() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
    }

    /// Fires with probability `eps`.
    pub fn sample_coin(&self, v: VertexId, eps: f64) -> bool {
        self.vertex_unit(PURPOSE_SAMPLE, v) < eps
    }

    /// Fires with probability `1 - eps`.
    pub fn reveal_coin(&self, v: VertexId, eps: f64) -> bool {
        self.vertex_unit(PURPOSE_REVEAL, v) < 1.0 - eps
    }

    /// Fair coin; `true` puts the vertex in the second (electable) group.
    pub fn partition_coin(&self, v: VertexId) -> bool {
        self.vertex_unit(PURPOSE_PARTITION, v) < 0.5
    }

    /// Uniform scan order over `n` vertices, drawn by Fisher-Yates from the
    /// permutation stream. Depends only on the seed and `n`.
    pub fn permutation(&self, n: usize) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = (0..n).map(VertexId).collect();
        let mut stream = Stream::new(mix64(self.master_seed ^ mix64(PURPOSE_PERMUTATION)));
        stream.shuffle(&mut order);
        order
    }

    /// Stream reserved for degenerate cases (empty electable sets, winner
    /// padding). Consumed sequentially, but only on paths whose triggering
    /// event is itself arc-independent.
    pub fn fallback_stream(&self) -> FallbackStream {
        FallbackStream {
            stream: Stream::new(mix64(self.master_seed ^ mix64(PURPOSE_FALLBACK))),
        }
    }
}

/// Sequential uniform draws for fallback paths.
#[derive(Clone, Debug)]
pub struct FallbackStream {
    stream: Stream,
}

impl FallbackStream {
    pub fn next_vertex(&mut self, n: usize) -> VertexId {
        assert!(n > 0);
        VertexId(self.stream.next_below(n as u64) as usize)
    }
}
