//! Undirected simple graphs with dense all-pairs distances.
//!
//! Vertices are 0-based indices internally; the file format uses 1-based
//! indices (DIMACS convention). Graphs are immutable once built and safe to
//! share across threads.

use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range (vertex count {1})")]
    VertexOutOfRange(usize, usize),
    #[error("graph is disconnected: no path from vertex {0} to vertex {1}")]
    Disconnected(usize, usize),
}

/// Immutable undirected simple graph. Edges are stored as `(u, v)` with
/// `u < v`, sorted; `labels` are advisory metadata recording builder
/// provenance and are never consulted by algorithms.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.labels == other.labels
    }
}
impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// and out-of-range endpoints.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            labels: vec![None; n],
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn set_label(&mut self, v: usize, tag: impl Into<String>) {
        self.labels[v] = Some(tag.into());
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_order(0).len() == self.n
    }

    /// Vertices in breadth-first order from `start`, neighbors visited in
    /// ascending index order. Only reachable vertices are returned.
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }
}

/// Exact shortest-path edge counts for a connected graph, plus the maximum
/// entry (diameter). Symmetric, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

/// BFS from every vertex. Errors on disconnected input, naming one
/// unreachable pair.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.vertex_count();
    let mut dist = vec![u32::MAX; n * n];
    let mut diameter = 0u32;
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &w in g.neighbors(u) {
                if row[w] == u32::MAX {
                    row[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        for (v, &d) in row.iter().enumerate() {
            if d == u32::MAX {
                return Err(GraphError::Disconnected(s, v));
            }
            diameter = diameter.max(d);
        }
    }
    Ok(DistanceMatrix { n, dist, diameter })
}

/// Path v_1 .. v_n, labeled `path:1` .. `path:n`.
pub fn build_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut g = Graph::new(n, &edges)?;
    for v in 0..n {
        g.set_label(v, format!("path:{}", v + 1));
    }
    Ok(g)
}

/// Cycle on n >= 3 vertices.
pub fn build_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter("cycle needs n >= 3".into()));
    }
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    let mut g = Graph::new(n, &edges)?;
    for v in 0..n {
        g.set_label(v, format!("cycle:{}", v + 1));
    }
    Ok(g)
}

/// Complete graph on n >= 1 vertices.
pub fn build_complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("complete needs n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let mut g = Graph::new(n, &edges)?;
    for v in 0..n {
        g.set_label(v, format!("complete:{}", v + 1));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_builder_shapes() {
        let g = build_path(1).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);

        let g = build_path(4).unwrap();
        let dm = all_pairs_distances(&g).unwrap();
        assert_eq!(dm.diameter(), 3);
        assert_eq!(dm.dist(0, 3), 3);

        let g = build_path(10).unwrap();
        let ones = g.degree_sequence().iter().filter(|&&d| d == 1).count();
        assert_eq!(ones, 2);
        assert_eq!(g.label(2), Some("path:3"));

        assert!(build_path(0).is_err());
    }

    #[test]
    fn cycle_builder_shapes() {
        assert!(build_cycle(2).is_err());
        let g = build_cycle(3).unwrap();
        assert_eq!(all_pairs_distances(&g).unwrap().diameter(), 1);
        let g = build_cycle(8).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert!(g.degree_sequence().iter().all(|&d| d == 2));
        let dm = all_pairs_distances(&g).unwrap();
        assert_eq!(dm.diameter(), 4);
        assert_eq!(dm.dist(0, 4), 4);

        // every vertex of C_5 has exactly two vertices at distance 2
        let g = build_cycle(5).unwrap();
        let dm = all_pairs_distances(&g).unwrap();
        for u in 0..5 {
            let at2 = (0..5).filter(|&v| dm.dist(u, v) == 2).count();
            assert_eq!(at2, 2);
        }
    }

    #[test]
    fn complete_builder_shapes() {
        assert_eq!(build_complete(4).unwrap().edge_count(), 6);
        assert_eq!(build_complete(5).unwrap().edge_count(), 10);
        let k2 = build_complete(2).unwrap();
        let p2 = build_path(2).unwrap();
        assert_eq!(k2.edges(), p2.edges());
        assert_eq!(all_pairs_distances(&k2).unwrap().diameter(), 1);
    }

    #[test]
    fn disconnected_is_reported() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        match all_pairs_distances(&g) {
            Err(GraphError::Disconnected(u, v)) => {
                assert_ne!(u, v);
            }
            other => panic!("expected disconnected error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange(3, 3))
        ));
    }
}
