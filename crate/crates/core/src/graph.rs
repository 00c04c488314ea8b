//! Finite simple loopless undirected graphs over [`VertexLabel`]s.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::label::VertexLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {{{0}, {1}}} has an endpoint that is not a vertex")]
    EdgeEndpointMissing(VertexLabel, VertexLabel),
    #[error("loop edge at {0}")]
    LoopEdge(VertexLabel),
    #[error("{0} is not a vertex of the graph")]
    VertexNotInGraph(VertexLabel),
}

/// A finite simple loopless undirected graph.
///
/// Vertices are stored in canonical label order and addressed by their index
/// in that order. Edges are index pairs `(i, j)` with `i < j`, sorted. The
/// value is immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<VertexLabel>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty() -> Graph {
        Graph {
            vertices: Vec::new(),
            edges: Vec::new(),
            neighbors: Vec::new(),
        }
    }

    /// Validates and builds a graph. Duplicate vertices and edges merge.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = VertexLabel>,
        E: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let vertices: Vec<VertexLabel> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut idx_edges = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            match (vertices.binary_search(&a), vertices.binary_search(&b)) {
                (Ok(i), Ok(j)) => {
                    idx_edges.insert((i.min(j), i.max(j)));
                }
                _ => return Err(GraphError::EdgeEndpointMissing(a, b)),
            }
        }
        Ok(Graph::from_sorted(vertices, idx_edges))
    }

    /// `vertices` must be strictly increasing and every pair `i < j` in range.
    pub(crate) fn from_sorted(
        vertices: Vec<VertexLabel>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut neighbors = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            debug_assert!(i < j && j < vertices.len());
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        Graph {
            vertices,
            edges,
            neighbors,
        }
    }

    /// Builds a graph from labels given in any order, mapping edge
    /// endpoints through the sort. Used by the functor constructions.
    pub(crate) fn from_labeled_edges(
        vertices: Vec<VertexLabel>,
        edges: impl IntoIterator<Item = (VertexLabel, VertexLabel)>,
    ) -> Graph {
        Graph::new(vertices, edges).expect("construction yields a valid graph")
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn label(&self, i: usize) -> &VertexLabel {
        &self.vertices[i]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.vertices.binary_search(label).ok()
    }

    pub fn contains(&self, label: &VertexLabel) -> bool {
        self.index_of(label).is_some()
    }

    /// Edges as sorted index pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> + '_ {
        self.edges
            .iter()
            .map(move |&(i, j)| (&self.vertices[i], &self.vertices[j]))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    pub fn adjacent_labels(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }

    /// Categorical (tensor) product: `(a1,b1) ~ (a2,b2)` iff `a1 ~ a2` and `b1 ~ b2`.
    ///
    /// Vertex `(a_i, b_j)` gets index `i * |V(B)| + j`, which is already the
    /// canonical order of pair labels.
    pub fn product(&self, other: &Graph) -> Graph {
        let m = other.order();
        let vertices = self
            .vertices
            .iter()
            .flat_map(|a| {
                other
                    .vertices
                    .iter()
                    .map(move |b| VertexLabel::pair(a.clone(), b.clone()))
            })
            .collect();
        let mut edges = Vec::with_capacity(2 * self.size() * other.size());
        for &(a1, a2) in &self.edges {
            for &(b1, b2) in &other.edges {
                edges.push((a1 * m + b1, a2 * m + b2));
                edges.push((a1 * m + b2, a2 * m + b1));
            }
        }
        Graph::from_sorted(vertices, edges)
    }

    pub fn induced_subgraph<'a>(
        &self,
        subset: impl IntoIterator<Item = &'a VertexLabel>,
    ) -> Result<Graph, GraphError> {
        let mut keep = BTreeSet::new();
        for l in subset {
            keep.insert(
                self.index_of(l)
                    .ok_or_else(|| GraphError::VertexNotInGraph(l.clone()))?,
            );
        }
        Ok(self.induced_by_indices(&keep.into_iter().collect::<Vec<_>>()))
    }

    /// `keep` must be strictly increasing.
    pub(crate) fn induced_by_indices(&self, keep: &[usize]) -> Graph {
        let mut new_index = vec![usize::MAX; self.order()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| new_index[i] != usize::MAX && new_index[j] != usize::MAX)
            .map(|&(i, j)| (new_index[i], new_index[j]));
        Graph::from_sorted(vertices, edges)
    }

    /// Complete graph on the given labels.
    pub fn complete(labels: impl IntoIterator<Item = VertexLabel>) -> Graph {
        let vertices: Vec<_> = labels.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let n = vertices.len();
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_sorted(vertices, edges)
    }

    pub fn edgeless(labels: impl IntoIterator<Item = VertexLabel>) -> Graph {
        Graph::new(labels, std::iter::empty()).expect("no edges to validate")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ V = [")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "], E = [")?;
        for (i, (a, b)) in self.edge_labels().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "] }}")
    }
}
