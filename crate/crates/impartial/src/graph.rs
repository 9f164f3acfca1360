//! Directed vote graphs: each vertex is an agent, an arc `(u, v)` records
//! that `u` votes for `v`. Graphs are loopless and simple, and immutable
//! once built, so they can be shared freely across concurrent trials.

use std::fmt;

use thiserror::Error;

use crate::rng::Stream;

/// Index of a vertex in its owning graph, always in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not {degree}-in/out-regular at vertex {vertex}")]
    NotRegular { vertex: usize, degree: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Loopless simple directed graph with derived in/out adjacency.
///
/// Arcs are kept in canonical (lexicographic) order, which gives a stable
/// serialization and makes equality structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    in_nbrs: Vec<Vec<VertexId>>,
    out_nbrs: Vec<Vec<VertexId>>,
}

/// Validates and indexes an arc list.
///
/// Rejects self-loops, duplicate arcs, endpoints outside `[0, n)`, and
/// `n = 0`.
pub fn build_digraph(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    let mut canonical: Vec<(VertexId, VertexId)> = Vec::with_capacity(arcs.len());
    for &(u, v) in arcs {
        if u >= n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n });
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        canonical.push((VertexId(u), VertexId(v)));
    }
    canonical.sort_unstable();
    for w in canonical.windows(2) {
        if w[0] == w[1] {
            return Err(GraphError::DuplicateArc(w[0].0.index(), w[0].1.index()));
        }
    }
    let mut in_nbrs = vec![Vec::new(); n];
    let mut out_nbrs = vec![Vec::new(); n];
    for &(u, v) in &canonical {
        out_nbrs[u.index()].push(v);
        in_nbrs[v.index()].push(u);
    }
    // Canonical arc order already yields sorted out-lists; sort in-lists too.
    for list in &mut in_nbrs {
        list.sort_unstable();
    }
    Ok(Digraph {
        n,
        arcs: canonical,
        in_nbrs,
        out_nbrs,
    })
}

impl Digraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in canonical (lexicographic) order.
    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_nbrs[v.index()]
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_nbrs[v.index()]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_nbrs[v.index()].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_nbrs[v.index()].len()
    }

    /// Maximum in-degree over all vertices; 0 for the arcless graph.
    pub fn max_in_degree(&self) -> usize {
        self.in_nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Copy of this graph with the out-neighborhood of `v` replaced by
    /// `new_out`. Every other vertex keeps its votes unchanged.
    pub fn with_replaced_out_neighborhood(
        &self,
        v: VertexId,
        new_out: &[VertexId],
    ) -> Result<Digraph, GraphError> {
        if v.index() >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v.index(),
                n: self.n,
            });
        }
        let mut arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter(|(u, _)| *u != v)
            .map(|(u, w)| (u.index(), w.index()))
            .collect();
        for &w in new_out {
            arcs.push((v.index(), w.index()));
        }
        build_digraph(self.n, &arcs)
    }
}

/// Graph with `n` vertices and the single arc `0 -> 1`.
pub fn single_arc(n: usize) -> Result<Digraph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(
            "single-arc graph needs at least 2 vertices".into(),
        ));
    }
    build_digraph(n, &[(0, 1)])
}

/// Complete digraph: every ordered pair of distinct vertices is an arc.
pub fn complete(n: usize) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                arcs.push((u, v));
            }
        }
    }
    build_digraph(n, &arcs)
}

/// Circulant digraph with arcs `i -> (i + j) mod n` for `j = 1..=degree`:
/// every vertex has in-degree and out-degree exactly `degree`.
pub fn circulant_regular(n: usize, degree: usize) -> Result<Digraph, GraphError> {
    if degree == 0 {
        return Err(GraphError::InvalidParameter(
            "regular degree must be at least 1".into(),
        ));
    }
    if n <= degree {
        return Err(GraphError::InvalidParameter(format!(
            "circulant needs n > degree, got n = {n}, degree = {degree}"
        )));
    }
    let mut arcs = Vec::with_capacity(n * degree);
    for i in 0..n {
        for j in 1..=degree {
            arcs.push((i, (i + j) % n));
        }
    }
    build_digraph(n, &arcs)
}

/// Number of regular vertices used by [`tight_example`]:
/// `ceil((degree + 1) * (degree^2 + degree + 1) * ln(1 / eps))`.
pub fn tight_example_core_size(degree: usize, eps: f64) -> Result<usize, GraphError> {
    if degree == 0 {
        return Err(GraphError::InvalidParameter(
            "degree must be at least 1".into(),
        ));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(GraphError::InvalidParameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let factor = ((degree + 1) * (degree * degree + degree + 1)) as f64;
    let core = (factor * (1.0 / eps).ln()).ceil() as usize;
    // The construction needs a valid circulant and 2*degree - 1 distinct
    // vote sources for the sink.
    if core <= degree || core < 2 * degree - 1 {
        return Err(GraphError::InvalidParameter(format!(
            "eps = {eps} leaves too few regular vertices ({core}) for degree {degree}"
        )));
    }
    Ok(core)
}

/// Worst-case family for sequential-scan mechanisms: a `degree`-in/out-regular
/// circulant plus one sink whose in-degree is `2 * degree - 1`.
///
/// The sink is the last vertex; its votes come from vertices
/// `0..=2 * degree - 2`.
pub fn tight_example(degree: usize, eps: f64) -> Result<Digraph, GraphError> {
    let core = tight_example_core_size(degree, eps)?;
    let sink = core;
    let mut arcs = Vec::with_capacity(core * degree + 2 * degree - 1);
    for i in 0..core {
        for j in 1..=degree {
            arcs.push((i, (i + j) % core));
        }
    }
    for source in 0..(2 * degree - 1) {
        arcs.push((source, sink));
    }
    build_digraph(core + 1, &arcs)
}

/// Uniform arc sampling: each ordered pair `(u, v)`, `u != v`, becomes an arc
/// independently with probability `p`. Deterministic in `seed`.
pub fn uniform_random(n: usize, p: f64, seed: u64) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!(
            "arc probability must lie in [0, 1], got {p}"
        )));
    }
    let mut stream = Stream::new(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && stream.next_unit() < p {
                arcs.push((u, v));
            }
        }
    }
    build_digraph(n, &arcs)
}

/// Greedy independent witness set for a `degree`-in/out-regular graph.
///
/// Repeatedly takes the lowest-index surviving vertex `z` and discards `z`,
/// its in- and out-neighbors, and the out-neighbors of its in-neighbors. The
/// result has no internal arcs, pairwise-disjoint in-neighborhoods, and at
/// least `n / (degree^2 + degree + 1)` members.
pub fn greedy_witness_set(g: &Digraph, degree: usize) -> Result<Vec<VertexId>, GraphError> {
    for v in g.vertices() {
        if g.in_degree(v) != degree || g.out_degree(v) != degree {
            return Err(GraphError::NotRegular {
                vertex: v.index(),
                degree,
            });
        }
    }
    let mut alive = vec![true; g.n()];
    let mut witness = Vec::new();
    let mut cursor = 0;
    while cursor < g.n() {
        if !alive[cursor] {
            cursor += 1;
            continue;
        }
        let z = VertexId(cursor);
        witness.push(z);
        alive[cursor] = false;
        for &u in g.in_neighbors(z) {
            alive[u.index()] = false;
            for &w in g.out_neighbors(u) {
                alive[w.index()] = false;
            }
        }
        for &w in g.out_neighbors(z) {
            alive[w.index()] = false;
        }
        cursor += 1;
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn build_single_arc() {
        let g = build_digraph(2, &[(0, 1)]).unwrap();
        assert_eq!(g.max_in_degree(), 1);
        assert_eq!(g.in_degree(VertexId(1)), 1);
        assert_eq!(g.in_degree(VertexId(0)), 0);
    }

    #[test]
    fn build_arcless() {
        let g = build_digraph(3, &[]).unwrap();
        assert_eq!(g.max_in_degree(), 0);
        assert_eq!(g.arc_count(), 0);
    }

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(build_digraph(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
    }

    #[test]
    fn build_rejects_duplicates_and_range() {
        assert_eq!(
            build_digraph(2, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateArc(0, 1))
        );
        assert_eq!(
            build_digraph(2, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 2 })
        );
        assert_eq!(build_digraph(0, &[]), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn complete_digraph_degrees() {
        let g = complete(4).unwrap();
        assert_eq!(g.max_in_degree(), 3);
        for v in g.vertices() {
            assert_eq!(g.in_degree(v), 3);
            assert_eq!(g.out_degree(v), 3);
        }
    }

    #[test]
    fn circulant_is_regular() {
        let g = circulant_regular(4, 1).unwrap();
        for v in g.vertices() {
            assert_eq!(g.in_degree(v), 1);
            assert_eq!(g.out_degree(v), 1);
        }
        let g = circulant_regular(5, 2).unwrap();
        for v in g.vertices() {
            assert_eq!(g.in_degree(v), 2);
            assert_eq!(g.out_degree(v), 2);
        }
    }

    #[test]
    fn circulant_rejects_tight_fit() {
        assert!(circulant_regular(3, 3).is_err());
        assert!(circulant_regular(2, 3).is_err());
    }

    #[test]
    fn tight_example_sizes() {
        // ceil(3 * 7 * ln 5) = ceil(33.79...) = 34 regular vertices.
        assert_eq!(tight_example_core_size(2, 0.2).unwrap(), 34);
        // ceil(2 * 3 * ln(10/3)) = ceil(7.22...) = 8 regular vertices.
        assert_eq!(tight_example_core_size(1, 0.3).unwrap(), 8);

        let g = tight_example(2, 0.2).unwrap();
        assert_eq!(g.n(), 35);
        assert_eq!(g.max_in_degree(), 3);
        let sink = VertexId(34);
        assert_eq!(g.in_degree(sink), 3);
        assert_eq!(g.out_degree(sink), 0);
        let sources: Vec<usize> = g.in_neighbors(sink).iter().map(|v| v.index()).collect();
        assert_eq!(sources, vec![0, 1, 2]);
    }

    #[test]
    fn tight_example_core_is_regular_without_sink() {
        let degree = 3;
        let g = tight_example(degree, 0.2).unwrap();
        let sink = VertexId(g.n() - 1);
        for v in g.vertices().filter(|&v| v != sink) {
            assert_eq!(g.in_degree(v), degree);
            let out_to_core = g
                .out_neighbors(v)
                .iter()
                .filter(|&&w| w != sink)
                .count();
            assert_eq!(out_to_core, degree);
        }
        assert_eq!(g.max_in_degree(), 2 * degree - 1);
    }

    #[test]
    fn tight_example_rejects_bad_params() {
        assert!(tight_example(0, 0.2).is_err());
        assert!(tight_example(2, 0.0).is_err());
        assert!(tight_example(2, 1.0).is_err());
        // eps so large that the regular core would be smaller than the
        // degree itself.
        assert!(tight_example(8, 0.999).is_err());
    }

    #[test]
    fn uniform_random_is_seed_deterministic() {
        let a = uniform_random(12, 0.5, 99).unwrap();
        let b = uniform_random(12, 0.5, 99).unwrap();
        assert_eq!(a, b);
        let c = uniform_random(12, 0.5, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn replaced_out_neighborhood_only_touches_one_vertex() {
        let g = build_digraph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g
            .with_replaced_out_neighborhood(VertexId(1), &[VertexId(0), VertexId(3)])
            .unwrap();
        assert_eq!(h.in_degree(VertexId(2)), 0);
        assert_eq!(h.out_neighbors(VertexId(1)), &[VertexId(0), VertexId(3)]);
        assert_eq!(h.out_neighbors(VertexId(0)), &[VertexId(1)]);
        assert_eq!(h.out_neighbors(VertexId(2)), &[VertexId(3)]);
    }

    fn assert_witness_valid(g: &Digraph, witness: &[VertexId]) {
        for (i, &a) in witness.iter().enumerate() {
            let in_a: HashSet<VertexId> = g.in_neighbors(a).iter().copied().collect();
            for &b in &witness[i + 1..] {
                assert!(!g.out_neighbors(a).contains(&b), "arc {a} -> {b}");
                assert!(!g.out_neighbors(b).contains(&a), "arc {b} -> {a}");
                assert!(
                    g.in_neighbors(b).iter().all(|u| !in_a.contains(u)),
                    "{a} and {b} share an in-neighbor"
                );
            }
        }
    }

    #[test]
    fn witness_set_on_directed_cycle() {
        let g = circulant_regular(10, 1).unwrap();
        let z = greedy_witness_set(&g, 1).unwrap();
        assert!(z.len() >= 4, "got {}", z.len());
        assert_witness_valid(&g, &z);
    }

    #[test]
    fn witness_set_on_arcless_graph_keeps_everything() {
        let g = build_digraph(6, &[]).unwrap();
        let z = greedy_witness_set(&g, 0).unwrap();
        assert_eq!(z.len(), 6);
    }

    #[test]
    fn witness_set_on_wider_circulant() {
        let g = circulant_regular(50, 3).unwrap();
        let z = greedy_witness_set(&g, 3).unwrap();
        assert!(z.len() >= 4, "got {}", z.len());
        assert_witness_valid(&g, &z);
    }

    #[test]
    fn witness_set_rejects_non_regular() {
        let g = build_digraph(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            greedy_witness_set(&g, 1),
            Err(GraphError::NotRegular { .. })
        ));
    }
}
