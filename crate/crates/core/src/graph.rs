//! Simple graphs with 1-based vertex ids, class validators and block
//! decomposition.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};

/// A finite simple graph on vertices `1..=n`.
///
/// Undirected edges are stored as `(u, v)` with `u < v`. Directed edges keep
/// their orientation. Edge lists and neighbor lists are sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and ids outside
    /// `1..=n`. Connectivity is not checked here; see [`Graph::is_connected`].
    pub fn new(n: usize, directed: bool, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::BadVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !set.insert(key) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out[u - 1].push(v);
            inc[v - 1].push(u);
            if !directed {
                out[v - 1].push(u);
                inc[u - 1].push(v);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            directed,
            edges,
            out,
            inc,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbors (all neighbors when undirected), sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.out[v - 1]
    }

    /// In-neighbors (all neighbors when undirected), sorted.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v - 1].len()
    }

    /// Whether `u → v` is an edge (either orientation when undirected).
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.out[u - 1].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::BadVertex { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Connected when undirected, weakly connected when directed. The empty
    /// graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![1usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.out[v - 1].iter().chain(&self.inc[v - 1]) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Kahn's algorithm; `None` when the directed graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (1..=self.n).filter(|&v| indeg[v - 1] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.out[v - 1] {
                indeg[w - 1] -= 1;
                if indeg[w - 1] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// `A(Γ)`: entry (i-1, j-1) is 1 iff `i → j` is an edge.
    pub fn adjacency_matrix(&self) -> BitMatrix {
        BitMatrix::from_fn(self.n, |i, j| self.out[i].binary_search(&(j + 1)).is_ok())
    }

    /// Breadth-first distances from `source`, following edge direction.
    /// Unreachable vertices are absent.
    pub fn bfs_distances(&self, source: usize) -> Result<BTreeMap<usize, usize>> {
        self.check_vertex(source)?;
        Ok(self
            .distances_from(source)
            .into_iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (i + 1, d)))
            .collect())
    }

    /// Distances indexed by `vertex - 1`.
    pub(crate) fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source - 1] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v - 1].unwrap();
            for &w in &self.out[v - 1] {
                if dist[w - 1].is_none() {
                    dist[w - 1] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_tree(&self) -> bool {
        !self.directed && self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        !self.directed && self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn block_decomposition(&self) -> Result<BlockDecomposition> {
        if self.directed {
            return Err(Error::Class {
                operation: "block_decomposition",
                found: GraphClass::Dag,
            });
        }
        Ok(BlockDecomposition::new(self))
    }

    pub fn classify(&self) -> GraphClass {
        if self.directed {
            return if self.is_connected() && self.topological_order().is_some() {
                GraphClass::Dag
            } else {
                GraphClass::Other
            };
        }
        if !self.is_connected() {
            return GraphClass::Other;
        }
        if self.is_tree() {
            return GraphClass::Tree;
        }
        if self.is_complete() {
            return GraphClass::CompleteGraph;
        }
        let blocks = BlockDecomposition::new(self);
        match (blocks.block_graph_valid, blocks.blocks.len() >= 2, blocks.uniform) {
            (true, true, true) => GraphClass::UniformBlockGraph,
            (true, true, false) => GraphClass::BlockGraph,
            _ => GraphClass::Other,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("directed", &self.directed)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Supported graph classes. `Other` is everything the algebraic routes do
/// not cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphClass {
    Tree,
    Dag,
    UniformBlockGraph,
    BlockGraph,
    CompleteGraph,
    Other,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Tree => "tree",
            GraphClass::Dag => "dag",
            GraphClass::UniformBlockGraph => "uniform-block-graph",
            GraphClass::BlockGraph => "block-graph",
            GraphClass::CompleteGraph => "complete-graph",
            GraphClass::Other => "other",
        }
    }

    /// Any class whose blocks are all cliques of order at least 3.
    pub fn is_block_like(self) -> bool {
        matches!(
            self,
            GraphClass::UniformBlockGraph | GraphClass::BlockGraph | GraphClass::CompleteGraph
        )
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Blocks (maximal 2-connected subgraphs) and cut vertices of an undirected
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, ordered by minimum vertex id.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    /// Every block is a clique with at least 3 vertices.
    pub block_graph_valid: bool,
    /// Largest block order.
    pub omega: usize,
    /// All block orders are equal.
    pub uniform: bool,
}

impl BlockDecomposition {
    fn new(g: &Graph) -> Self {
        let n = g.n;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (v, parent, idx) = *top;
                if idx < g.out[v].len() {
                    top.2 += 1;
                    let w = g.out[v][idx] - 1;
                    if disc[w] == usize::MAX {
                        edge_stack.push((v, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else if w != parent && disc[w] < disc[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            let mut verts = BTreeSet::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                verts.insert(a + 1);
                                verts.insert(b + 1);
                                if (a, b) == (parent, v) {
                                    break;
                                }
                            }
                            blocks.push(verts.into_iter().collect());
                        }
                    }
                }
            }
        }
        // isolated vertex (only possible for n = 1 in a connected graph)
        for v in 0..n {
            if g.out[v].is_empty() {
                blocks.push(vec![v + 1]);
            }
        }
        blocks.sort();

        let mut membership = vec![0usize; n];
        for b in &blocks {
            for &v in b {
                membership[v - 1] += 1;
            }
        }
        let cut_vertices = (1..=n).filter(|&v| membership[v - 1] >= 2).collect();
        let block_graph_valid = !blocks.is_empty()
            && blocks.iter().all(|b| {
                b.len() >= 3
                    && b.iter()
                        .enumerate()
                        .all(|(i, &u)| b[i + 1..].iter().all(|&v| g.has_edge(u, v)))
            });
        let omega = blocks.iter().map(Vec::len).max().unwrap_or(0);
        let uniform = blocks.windows(2).all(|w| w[0].len() == w[1].len());
        BlockDecomposition {
            blocks,
            cut_vertices,
            block_graph_valid,
            omega,
            uniform,
        }
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn undirected(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, false, edges.iter().copied()).unwrap()
    }

    pub(crate) fn directed(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, true, edges.iter().copied()).unwrap()
    }

    pub(crate) fn path(n: usize) -> Graph {
        undirected(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                e.push((u, v));
            }
        }
        undirected(n, &e)
    }

    pub(crate) fn b2() -> Graph {
        undirected(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)])
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Graph::new(2, false, [(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(2, false, [(1, 2), (2, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(Graph::new(2, true, [(1, 2), (2, 1)]).is_ok());
        assert_eq!(
            Graph::new(2, false, [(1, 3)]).unwrap_err(),
            Error::BadVertex { vertex: 3, n: 2 }
        );
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            path(3).adjacency_matrix().to_rows(),
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]
        );
        assert_eq!(
            directed(3, &[(1, 2), (2, 3)]).adjacency_matrix().to_rows(),
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]
        );
        assert_eq!(
            complete(3).adjacency_matrix().to_rows(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        assert!(path(5).adjacency_matrix().is_symmetric());
        assert!(!directed(3, &[(1, 2), (2, 3)]).adjacency_matrix().is_symmetric());
    }

    #[test]
    fn block_examples() {
        let d = b2().block_decomposition().unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2, 3], vec![3, 4, 5]]);
        assert_eq!(d.cut_vertices, vec![3]);
        assert_eq!(d.omega, 3);
        assert!(d.uniform && d.block_graph_valid);

        let d = path(3).block_decomposition().unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(d.cut_vertices, vec![2]);
        assert!(!d.block_graph_valid);

        let d = complete(4).block_decomposition().unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2, 3, 4]]);
        assert!(d.cut_vertices.is_empty());
        assert_eq!(d.omega, 4);

        assert!(matches!(
            directed(2, &[(1, 2)]).block_decomposition(),
            Err(Error::Class { .. })
        ));
    }

    #[test]
    fn single_vertex_block() {
        let d = undirected(1, &[]).block_decomposition().unwrap();
        assert_eq!(d.blocks, vec![vec![1]]);
        assert!(!d.block_graph_valid);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(path(5).classify(), GraphClass::Tree);
        assert_eq!(path(1).classify(), GraphClass::Tree);
        assert_eq!(path(2).classify(), GraphClass::Tree);
        assert_eq!(b2().classify(), GraphClass::UniformBlockGraph);
        let c4 = undirected(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(c4.classify(), GraphClass::Other);
        assert_eq!(complete(4).classify(), GraphClass::CompleteGraph);
        let k3k4 = undirected(
            6,
            &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)],
        );
        assert_eq!(k3k4.classify(), GraphClass::BlockGraph);
        // triangles joined by a bridge are not block graphs here
        let bridged = undirected(6, &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]);
        assert_eq!(bridged.classify(), GraphClass::Other);
        assert_eq!(directed(3, &[(1, 2), (2, 3)]).classify(), GraphClass::Dag);
        assert_eq!(directed(3, &[(1, 2), (2, 3), (3, 1)]).classify(), GraphClass::Other);
        assert_eq!(undirected(3, &[(1, 2)]).classify(), GraphClass::Other);
    }

    #[test]
    fn bfs_examples() {
        let d = path(3).bfs_distances(1).unwrap();
        assert_eq!(d, BTreeMap::from([(1, 0), (2, 1), (3, 2)]));
        let d = complete(3).bfs_distances(2).unwrap();
        assert_eq!(d, BTreeMap::from([(1, 1), (2, 0), (3, 1)]));
        let d = directed(3, &[(1, 2), (2, 3)]).bfs_distances(3).unwrap();
        assert_eq!(d, BTreeMap::from([(3, 0)]));
        assert!(matches!(path(3).bfs_distances(4), Err(Error::BadVertex { .. })));
    }
}
