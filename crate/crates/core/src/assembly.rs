//! Turns the raw edge multiset into a simple undirected graph.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{BterError, Result};
use crate::model::{Edge, NodeId};

/// Simple undirected graph: canonical edges (`u < v`), sorted, unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    num_nodes: u64,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from edges that are already canonical, sorted and
    /// unique, checking all of that along with the id bound.
    pub fn from_sorted_edges(num_nodes: u64, edges: Vec<Edge>) -> Result<Self> {
        for w in edges.windows(2) {
            if w[0] >= w[1] {
                return Err(BterError::validation("edges are not sorted and unique"));
            }
        }
        if let Some(e) = edges.iter().find(|e| e.u >= e.v || e.v >= num_nodes) {
            return Err(BterError::validation(format!(
                "edge ({}, {}) is not canonical or exceeds {num_nodes} nodes",
                e.u, e.v
            )));
        }
        Ok(Graph { num_nodes, edges })
    }

    /// Widens the node id space, e.g. to keep isolated nodes of a
    /// generated graph. Fails if an edge endpoint would fall outside.
    pub fn with_num_nodes(mut self, num_nodes: u64) -> Result<Self> {
        let needed = self.edges.iter().map(|e| e.v + 1).max().unwrap_or(0);
        if num_nodes < needed {
            return Err(BterError::validation(format!(
                "graph needs {needed} node ids, {num_nodes} requested"
            )));
        }
        self.num_nodes = num_nodes;
        Ok(self)
    }

    pub fn num_nodes(&self) -> u64 {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.num_nodes as usize];
        for e in &self.edges {
            deg[e.u as usize] += 1;
            deg[e.v as usize] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }
}

/// Compressed sparse rows with sorted neighbor lists.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Adjacency {
    fn new(graph: &Graph) -> Self {
        let n = graph.num_nodes as usize;
        let mut offsets = vec![0usize; n + 1];
        for e in &graph.edges {
            offsets[e.u as usize + 1] += 1;
            offsets[e.v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0; offsets[n]];
        // sorted edges push every smaller neighbor of a node before any
        // larger one, each run ascending
        for e in &graph.edges {
            targets[cursor[e.u as usize]] = e.v;
            cursor[e.u as usize] += 1;
            targets[cursor[e.v as usize]] = e.u;
            cursor[e.v as usize] += 1;
        }
        let adj = Adjacency { offsets, targets };
        debug_assert!((0..n as NodeId).all(|u| adj.neighbors(u).windows(2).all(|w| w[0] < w[1])));
        adj
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DedupStrategy {
    /// Canonicalize, parallel sort, drop adjacent repeats.
    #[default]
    Sort,
    /// Hash set, then sort the survivors. Less memory traffic for small
    /// inputs with many repeats.
    Hash,
}

/// Canonicalizes pairs, drops self-loops and duplicates. The node count is
/// one past the largest endpoint.
pub fn dedup(raw: impl IntoIterator<Item = Edge>) -> Graph {
    dedup_with(raw, DedupStrategy::Sort)
}

pub fn dedup_with(raw: impl IntoIterator<Item = Edge>, strategy: DedupStrategy) -> Graph {
    let canonical = raw.into_iter().filter(|e| !e.is_loop()).map(Edge::canonical);
    let edges = match strategy {
        DedupStrategy::Sort => {
            let mut edges: Vec<Edge> = canonical.collect();
            edges.par_sort_unstable();
            edges.dedup();
            edges
        }
        DedupStrategy::Hash => {
            let set: HashSet<Edge> = canonical.collect();
            let mut edges: Vec<Edge> = set.into_iter().collect();
            edges.par_sort_unstable();
            edges
        }
    };
    let num_nodes = edges.iter().map(|e| e.v + 1).max().unwrap_or(0);
    Graph { num_nodes, edges }
}

/// Drops isolated nodes and relabels the rest densely in id order.
pub fn compact(graph: &Graph) -> Graph {
    let deg = graph.degrees();
    let mut relabel = vec![NodeId::MAX; deg.len()];
    let mut next = 0;
    for (old, &d) in deg.iter().enumerate() {
        if d > 0 {
            relabel[old] = next;
            next += 1;
        }
    }
    // monotone relabeling keeps the edge order
    let edges = graph
        .edges
        .iter()
        .map(|e| Edge::new(relabel[e.u as usize], relabel[e.v as usize]))
        .collect();
    Graph {
        num_nodes: next,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(u: NodeId, v: NodeId) -> Edge {
        Edge::new(u, v)
    }

    #[test]
    fn symmetric_duplicates_collapse() {
        let g = dedup([e(1, 2), e(2, 1), e(1, 2)]);
        assert_eq!(g.edges(), &[e(1, 2)]);
        assert_eq!(g.num_nodes(), 3);
    }

    #[test]
    fn self_loops_dropped() {
        let g = dedup([e(3, 3)]);
        assert_eq!(g.num_edges(), 0);
        let g = dedup_with([e(3, 3)], DedupStrategy::Hash);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn birthday_expectation() {
        // Chung-Lu style endpoints on 40 nodes with weights 1..=40
        let weights: Vec<f64> = (1..=40).map(|i| i as f64).collect();
        let total: f64 = weights.iter().sum();
        let cum = crate::sampling::cumulative(weights.iter().copied());
        let draws = 1_000_000u64;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let raw: Vec<Edge> = (0..draws)
            .map(|_| {
                let u = crate::sampling::weighted_index_sample(&cum, rng.random()).unwrap();
                let v = crate::sampling::weighted_index_sample(&cum, rng.random()).unwrap();
                e(u as NodeId, v as NodeId)
            })
            .collect();
        let g = dedup(raw);
        // a draw lands on unordered pair {i, j} with p = 2 w_i w_j / W^2
        let mut expected = 0.0;
        for i in 0..40 {
            for j in i + 1..40 {
                let p = 2.0 * weights[i] * weights[j] / (total * total);
                expected += 1.0 - (1.0 - p).powf(draws as f64);
            }
        }
        let got = g.num_edges() as f64;
        assert!((got - expected).abs() / expected < 0.01, "{got} vs {expected}");

        // a sparser regime where repeats are partial
        let draws = 2_000u64;
        let raw: Vec<Edge> = (0..draws)
            .map(|_| {
                let u = crate::sampling::weighted_index_sample(&cum, rng.random()).unwrap();
                let v = crate::sampling::weighted_index_sample(&cum, rng.random()).unwrap();
                e(u as NodeId, v as NodeId)
            })
            .collect();
        let g = dedup(raw);
        let mut expected = 0.0;
        for i in 0..40 {
            for j in i + 1..40 {
                let p = 2.0 * weights[i] * weights[j] / (total * total);
                expected += 1.0 - (1.0 - p).powf(draws as f64);
            }
        }
        let got = g.num_edges() as f64;
        assert!((got - expected).abs() / expected < 0.03, "{got} vs {expected}");
    }

    #[test]
    fn compact_examples() {
        let g = Graph::from_sorted_edges(3, vec![e(0, 2)]).unwrap();
        let c = compact(&g);
        assert_eq!(c.num_nodes(), 2);
        assert_eq!(c.edges(), &[e(0, 1)]);

        let full = Graph::from_sorted_edges(3, vec![e(0, 1), e(1, 2)]).unwrap();
        assert_eq!(compact(&full), full);
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::from_sorted_edges(3, vec![e(1, 0)]).is_err());
        assert!(Graph::from_sorted_edges(2, vec![e(0, 2)]).is_err());
        assert!(Graph::from_sorted_edges(3, vec![e(0, 1), e(0, 1)]).is_err());
        let g = dedup([e(0, 4)]);
        assert!(g.clone().with_num_nodes(3).is_err());
        assert_eq!(g.with_num_nodes(9).unwrap().num_nodes(), 9);
    }

    #[test]
    fn adjacency_sorted() {
        let g = dedup([e(3, 0), e(1, 3), e(2, 3), e(0, 1), e(4, 3)]);
        let adj = g.adjacency();
        assert_eq!(adj.neighbors(3), &[0, 1, 2, 4]);
        assert_eq!(adj.neighbors(0), &[1, 3]);
        assert!(adj.has_edge(4, 3));
        assert!(!adj.has_edge(0, 2));
    }

    fn raw_edges() -> impl Strategy<Value = Vec<(u64, u64)>> {
        proptest::collection::vec((0u64..30, 0u64..30), 0..200)
    }

    proptest! {
        #[test]
        fn dedup_idempotent_and_order_free(raw in raw_edges(), seed in any::<u64>()) {
            let raw: Vec<Edge> = raw.into_iter().map(Edge::from).collect();
            let g = dedup(raw.clone());
            prop_assert!(g.num_edges() <= raw.len());
            let again = dedup(g.edges().iter().copied());
            prop_assert_eq!(again.edges(), g.edges());
            prop_assert_eq!(dedup_with(raw.clone(), DedupStrategy::Hash), g.clone());

            let mut shuffled = raw.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..shuffled.len()).rev() {
                let j = rng.random_range(0..=i);
                shuffled.swap(i, j);
            }
            prop_assert_eq!(dedup(shuffled), g);
        }

        #[test]
        fn compact_drops_exactly_isolated(raw in raw_edges(), extra in 0u64..20) {
            let g = dedup(raw.into_iter().map(Edge::from));
            let n = g.num_nodes() + extra;
            let g = g.with_num_nodes(n).unwrap();
            let deg = g.degrees();
            let isolated = deg.iter().filter(|&&d| d == 0).count() as u64;
            let c = compact(&g);
            prop_assert_eq!(c.num_nodes(), n - isolated);
            let mut before: Vec<u64> = deg.into_iter().filter(|&d| d > 0).collect();
            let mut after = c.degrees();
            before.sort_unstable();
            after.sort_unstable();
            prop_assert_eq!(before, after);
            prop_assert!(Graph::from_sorted_edges(c.num_nodes(), c.edges().to_vec()).is_ok());
        }
    }
}
