//! Immutable simple graphs and the neighborhood tables the checkers query.

use std::collections::VecDeque;

use crate::error::GraphError;

/// Dense vertex id in `0..n`.
pub type Vertex = usize;

/// An undirected simple graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. The graph never changes after
/// construction; every piece of mutable solver state lives elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }

        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }

        Ok(Self {
            adjacency,
            edge_count: degree_sum / 2,
        })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adjacency.len()
    }

    /// Sorted open neighborhood N(v).
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adjacency.iter().any(Vec::is_empty)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        self.bfs_distances(0, usize::MAX)
            .iter()
            .all(|d| d.is_some())
    }

    /// Breadth-first distances from `source`, stopping at depth `limit`.
    pub fn bfs_distances(&self, source: Vertex, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == limit {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Precomputed closed neighborhoods and distance-3 balls.
///
/// `ball3(v)` contains `v` itself, so an update around `v` also refreshes
/// `v`'s own counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodTables {
    closed: Vec<Vec<Vertex>>,
    ball3: Vec<Vec<Vertex>>,
}

impl NeighborhoodTables {
    pub fn new(graph: &Graph) -> Self {
        let closed = graph
            .vertices()
            .map(|v| {
                let mut list = graph.neighbors(v).to_vec();
                let pos = list.partition_point(|&w| w < v);
                list.insert(pos, v);
                list
            })
            .collect();

        // Truncated BFS reusing one scratch buffer across sources.
        let n = graph.vertex_count();
        let mut depth = vec![usize::MAX; n];
        let mut ball3 = Vec::with_capacity(n);
        for v in graph.vertices() {
            let mut reached = vec![v];
            depth[v] = 0;
            let mut head = 0;
            while head < reached.len() {
                let u = reached[head];
                head += 1;
                if depth[u] == 3 {
                    continue;
                }
                for &w in graph.neighbors(u) {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        reached.push(w);
                    }
                }
            }
            for &u in &reached {
                depth[u] = usize::MAX;
            }
            reached.sort_unstable();
            ball3.push(reached);
        }

        Self { closed, ball3 }
    }

    /// Sorted closed neighborhood N[v].
    pub fn closed(&self, v: Vertex) -> &[Vertex] {
        &self.closed[v]
    }

    /// Sorted set of vertices within distance 3 of `v`, `v` included.
    pub fn ball3(&self, v: Vertex) -> &[Vertex] {
        &self.ball3[v]
    }
}
