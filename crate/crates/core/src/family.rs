//! Exhaustive and random families of small labeled graphs.

use rand::Rng;

use crate::graph::Graph;
use crate::label::{atom, VertexLabel};

/// Vertex names for an `n`-vertex family: `a, b, c, ...` up to 26, then
/// zero-padded `v000, v001, ...` so lexical and numeric order agree.
pub fn vertex_names(n: usize) -> Vec<VertexLabel> {
    if n <= 26 {
        (0..n)
            .map(|i| atom(&((b'a' + i as u8) as char).to_string()))
            .collect()
    } else {
        (0..n).map(|i| atom(&format!("v{i:03}"))).collect()
    }
}

/// All `2^(n choose 2)` labeled graphs on `n` vertices, in order of the
/// edge bitmask over the pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let names = vertex_names(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    assert!(pairs.len() < 64, "too many labeled graphs to enumerate");
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_sorted(names.clone(), edges)
    })
}

/// Every labeled graph on `0..=max_n` vertices.
pub fn labeled_graphs_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
    (0..=max_n).flat_map(labeled_graphs)
}

pub fn random_graph<R: Rng + ?Sized>(n: usize, edge_probability: f64, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(edge_probability))
        .collect();
    Graph::from_sorted(vertex_names(n), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let counts: Vec<usize> = (0..=5).map(|n| labeled_graphs(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 8, 64, 1024]);
        assert_eq!(labeled_graphs_up_to(4).count(), 1 + 1 + 2 + 8 + 64);
    }

    #[test]
    fn family_is_duplicate_free() {
        let all: std::collections::BTreeSet<_> = labeled_graphs(4).map(|g| format!("{g:?}")).collect();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn long_names_sort_numerically() {
        let names = vertex_names(30);
        assert!(names.windows(2).all(|w| w[0] < w[1]));
    }
}
