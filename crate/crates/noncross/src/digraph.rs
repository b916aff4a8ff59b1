//! Graph representation, structural predicates, and the seven-way
//! classification the rule tables are built on.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A simple digraph on vertices `1..=n`: no self-loops, no duplicate arcs.
/// Antiparallel pairs like `(1, 2)` and `(2, 1)` are two distinct arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    /// Builds a graph on vertices `1..=n`. Repeated arcs collapse (arcs form
    /// a set); endpoints outside `1..=n` and self-loops are rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexCount { min: 1, got: 0 });
        }
        let mut set = BTreeSet::new();
        for (src, dst) in arcs {
            if src == 0 || dst == 0 || src > n || dst > n || src == dst {
                return Err(Error::InvalidArc { src, dst, n });
            }
            set.insert((src, dst));
        }
        Ok(Digraph { n, arcs: set })
    }

    /// The edgeless graph on `1..=n`.
    pub fn empty(n: usize) -> Result<Self> {
        Digraph::new(n, [])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in ascending `(src, dst)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn contains_arc(&self, src: usize, dst: usize) -> bool {
        self.arcs.contains(&(src, dst))
    }

    /// The graph with every arc reversed.
    pub fn reversed(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(s, d)| (d, s)).collect(),
        }
    }

    /// Undirected adjacency lists, indexed `0..n` for vertex `v - 1`.
    fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(s, d) in &self.arcs {
            adj[s - 1].push(d - 1);
            adj[d - 1].push(s - 1);
        }
        adj
    }

    /// Directed adjacency lists, indexed `0..n` for vertex `v - 1`.
    fn directed_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(s, d) in &self.arcs {
            adj[s - 1].push(d - 1);
        }
        adj
    }
}

/// The class of a noncrossing acyclic digraph on at least two vertices.
///
/// Every such graph falls in exactly one class: covered by an extremal arc
/// (in one of the two directions), extremally connected (with a directed
/// path in one of the two directions, or neither), the two-vertex edgeless
/// graph, or unconnected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphClass {
    /// The arc `(1, n)` is present.
    MinMaxCovered,
    /// The arc `(n, 1)` is present.
    MaxMinCovered,
    /// Extremal vertices linked, with a directed path from `1` to `n`.
    MinMaxConnected,
    /// Extremal vertices linked, with a directed path from `n` to `1`.
    MaxMinConnected,
    /// Extremal vertices linked, but by no directed path either way.
    MixConnected,
    /// The edgeless graph on two vertices.
    Elementary,
    /// No undirected path between the extremal vertices, `n >= 3`.
    Unconnected,
}

impl GraphClass {
    pub const ALL: [GraphClass; 7] = [
        GraphClass::MinMaxCovered,
        GraphClass::MaxMinCovered,
        GraphClass::MinMaxConnected,
        GraphClass::MaxMinConnected,
        GraphClass::MixConnected,
        GraphClass::Elementary,
        GraphClass::Unconnected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::MinMaxCovered => "minmax-covered",
            GraphClass::MaxMinCovered => "maxmin-covered",
            GraphClass::MinMaxConnected => "minmax-connected",
            GraphClass::MaxMinConnected => "maxmin-connected",
            GraphClass::MixConnected => "mix-connected",
            GraphClass::Elementary => "elementary",
            GraphClass::Unconnected => "unconnected",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// True when no two arcs properly interleave.
///
/// Arcs are compared by their unordered spans: `(a, b)` and `(c, d)` cross
/// exactly when `a < c < b < d` after normalizing each span to `lo < hi`.
/// Arcs that share an endpoint never cross, and neither do antiparallel
/// arcs (identical spans).
pub fn is_noncrossing(g: &Digraph) -> bool {
    let spans: Vec<(usize, usize)> = g.arcs().map(|(s, d)| (s.min(d), s.max(d))).collect();
    for (idx, &(a, b)) in spans.iter().enumerate() {
        for &(c, d) in &spans[idx + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return false;
            }
        }
    }
    true
}

/// True when the graph has no directed cycle (Kahn's algorithm).
pub fn is_acyclic(g: &Digraph) -> bool {
    let adj = g.directed_adjacency();
    let mut indegree = vec![0usize; g.n];
    for targets in &adj {
        for &t in targets {
            indegree[t] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..g.n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &t in &adj[v] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                queue.push(t);
            }
        }
    }
    seen == g.n
}

/// True when the underlying undirected graph is connected. The single-vertex
/// graph counts as connected; the two-vertex edgeless graph does not.
pub fn is_weakly_connected(g: &Digraph) -> bool {
    let adj = g.undirected_adjacency();
    reachable_from(&adj, 0).iter().filter(|&&r| r).count() == g.n
}

fn reachable_from(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut reached = vec![false; adj.len()];
    let mut stack = vec![start];
    reached[start] = true;
    while let Some(v) = stack.pop() {
        for &t in &adj[v] {
            if !reached[t] {
                reached[t] = true;
                stack.push(t);
            }
        }
    }
    reached
}

/// Classifies a noncrossing acyclic digraph on `n >= 2` vertices.
///
/// Covering arcs win first, in the min-to-max direction before max-to-min.
/// Otherwise the test is whether the extremal vertices `1` and `n` are
/// linked by an undirected path: if so, the class records which directed
/// extremal path exists (at most one can, by acyclicity); if not, the graph
/// is elementary (`n = 2`) or unconnected. A graph carrying both extremal
/// arcs is a 2-cycle and is rejected rather than classified.
pub fn classify(g: &Digraph) -> Result<GraphClass> {
    let n = g.n;
    if n < 2 {
        return Err(Error::ClassifyTooSmall);
    }
    let has_min_max = g.contains_arc(1, n);
    let has_max_min = g.contains_arc(n, 1);
    if has_min_max && has_max_min {
        return Err(Error::ExtremalCycle);
    }
    if has_min_max {
        return Ok(GraphClass::MinMaxCovered);
    }
    if has_max_min {
        return Ok(GraphClass::MaxMinCovered);
    }
    if reachable_from(&g.undirected_adjacency(), 0)[n - 1] {
        let forward = reachable_from(&g.directed_adjacency(), 0)[n - 1];
        let backward = reachable_from(&g.reversed().directed_adjacency(), 0)[n - 1];
        return Ok(match (forward, backward) {
            (true, false) => GraphClass::MinMaxConnected,
            (false, true) => GraphClass::MaxMinConnected,
            _ => GraphClass::MixConnected,
        });
    }
    if n == 2 {
        Ok(GraphClass::Elementary)
    } else {
        Ok(GraphClass::Unconnected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_zero_vertices() {
        assert!(matches!(
            Digraph::new(0, []),
            Err(Error::VertexCount { min: 1, got: 0 })
        ));
    }

    #[test]
    fn rejects_out_of_range_arcs_and_self_loops() {
        assert!(Digraph::new(3, [(1, 4)]).is_err());
        assert!(Digraph::new(3, [(0, 2)]).is_err());
        assert!(Digraph::new(3, [(2, 2)]).is_err());
    }

    #[test]
    fn arcs_are_a_set() {
        let g = graph(3, &[(1, 2), (1, 2), (2, 1)]);
        assert_eq!(g.arc_count(), 2);
    }

    #[test]
    fn crossing_detection() {
        assert!(!is_noncrossing(&graph(4, &[(1, 3), (2, 4)])));
        assert!(is_noncrossing(&graph(4, &[(1, 4), (3, 2)])));
        assert!(is_noncrossing(&graph(5, &[(1, 4), (3, 2), (5, 4)])));
        // Orientation is irrelevant: spans still interleave.
        assert!(!is_noncrossing(&graph(4, &[(3, 1), (2, 4)])));
        // Shared endpoints and antiparallel pairs never cross.
        assert!(is_noncrossing(&graph(3, &[(1, 2), (2, 3), (1, 3)])));
        assert!(is_noncrossing(&graph(2, &[(1, 2), (2, 1)])));
        assert!(is_noncrossing(&graph(1, &[])));
    }

    #[test]
    fn acyclicity() {
        assert!(!is_acyclic(&graph(2, &[(1, 2), (2, 1)])));
        assert!(is_acyclic(&graph(3, &[(1, 2), (2, 3), (1, 3)])));
        assert!(!is_acyclic(&graph(3, &[(1, 2), (2, 3), (3, 1)])));
        assert!(is_acyclic(&graph(4, &[])));
    }

    #[test]
    fn weak_connectivity() {
        assert!(!is_weakly_connected(&graph(2, &[])));
        assert!(is_weakly_connected(&graph(3, &[(1, 2), (3, 2)])));
        assert!(is_weakly_connected(&graph(1, &[])));
        // An isolated interior vertex disconnects the whole graph even
        // though the extremal vertices are linked.
        assert!(!is_weakly_connected(&graph(4, &[(1, 3), (3, 4)])));
    }

    #[test]
    fn classify_covers_the_examples() {
        assert_eq!(classify(&graph(2, &[])).unwrap(), GraphClass::Elementary);
        assert_eq!(
            classify(&graph(2, &[(1, 2)])).unwrap(),
            GraphClass::MinMaxCovered
        );
        assert_eq!(
            classify(&graph(2, &[(2, 1)])).unwrap(),
            GraphClass::MaxMinCovered
        );
        assert_eq!(
            classify(&graph(3, &[(1, 2), (2, 3)])).unwrap(),
            GraphClass::MinMaxConnected
        );
        assert_eq!(
            classify(&graph(3, &[(2, 1), (3, 2)])).unwrap(),
            GraphClass::MaxMinConnected
        );
        assert_eq!(
            classify(&graph(3, &[(1, 2), (3, 2)])).unwrap(),
            GraphClass::MixConnected
        );
        assert_eq!(
            classify(&graph(4, &[(3, 2)])).unwrap(),
            GraphClass::Unconnected
        );
        assert_eq!(classify(&graph(3, &[])).unwrap(), GraphClass::Unconnected);
    }

    #[test]
    fn classify_links_extremes_not_the_whole_graph() {
        // Vertex 2 is isolated, but 1 and 4 are linked by a directed path,
        // which is what the rule tables decompose on.
        assert_eq!(
            classify(&graph(4, &[(1, 3), (3, 4)])).unwrap(),
            GraphClass::MinMaxConnected
        );
    }

    #[test]
    fn classify_rejects_small_and_cyclic_inputs() {
        assert!(matches!(
            classify(&graph(1, &[])),
            Err(Error::ClassifyTooSmall)
        ));
        assert!(matches!(
            classify(&graph(2, &[(1, 2), (2, 1)])),
            Err(Error::ExtremalCycle)
        ));
    }

    #[test]
    fn reversal_swaps_directed_classes_on_all_small_graphs() {
        use crate::oracle::{oracle_enumerate, OracleConfig};

        for n in 2..=5 {
            let cfg = OracleConfig::new(crate::families::FamilyName::Acyclic, n).unwrap();
            for g in oracle_enumerate(&cfg) {
                let expected = match classify(&g).unwrap() {
                    GraphClass::MinMaxCovered => GraphClass::MaxMinCovered,
                    GraphClass::MaxMinCovered => GraphClass::MinMaxCovered,
                    GraphClass::MinMaxConnected => GraphClass::MaxMinConnected,
                    GraphClass::MaxMinConnected => GraphClass::MinMaxConnected,
                    other => other,
                };
                assert_eq!(classify(&g.reversed()).unwrap(), expected, "graph {g:?}");
            }
        }
    }

    #[test]
    fn directed_extremal_paths_exclude_each_other_on_acyclic_graphs() {
        use crate::oracle::{oracle_enumerate, OracleConfig};

        for n in 2..=5 {
            let cfg = OracleConfig::new(crate::families::FamilyName::Acyclic, n).unwrap();
            for g in oracle_enumerate(&cfg) {
                let fwd = reachable_from(&g.directed_adjacency(), 0)[n - 1];
                let bwd = reachable_from(&g.reversed().directed_adjacency(), 0)[n - 1];
                assert!(
                    !(fwd && bwd),
                    "acyclic graph with directed paths both ways: {g:?}"
                );
            }
        }
    }
}
