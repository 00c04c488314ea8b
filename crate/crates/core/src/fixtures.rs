//! Small named structures used by tests, the CLI and the demo.

use std::sync::Arc;

use crate::graph::Graph;
use crate::label::{atom, VertexLabel};
use crate::matching::PerfectMatching;
use crate::steiner::Psts;

/// The square `a-b-d-c-a` with the chord `b-c`.
///
/// Its two perfect matchings are `ab|cd` and `ac|bd`.
pub fn square_with_chord() -> Graph {
    let edges = [("a", "b"), ("b", "d"), ("d", "c"), ("c", "a"), ("b", "c")];
    Graph::new(
        ["a", "b", "c", "d"].map(atom),
        edges.map(|(u, v)| (atom(u), atom(v))),
    )
    .expect("valid fixture")
}

/// The matchings `a↔b, c↔d` and `a↔c, b↔d` on [`square_with_chord`].
pub fn example_matchings(g: &Arc<Graph>) -> (PerfectMatching, PerfectMatching) {
    let idx = |s: &str| g.index_of(&atom(s)).expect("fixture vertex");
    let m = |pairs: [(&str, &str); 2]| {
        PerfectMatching::from_edges(g.clone(), &pairs.map(|(u, v)| (idx(u), idx(v))))
            .expect("fixture matching")
    };
    (m([("a", "b"), ("c", "d")]), m([("a", "c"), ("b", "d")]))
}

/// `K2` on `{a, b}` with its only matching.
pub fn k2_swap(a: &str, b: &str) -> PerfectMatching {
    let g = Arc::new(Graph::complete([atom(a), atom(b)]));
    PerfectMatching::new(g, vec![1, 0]).expect("K2 swap")
}

pub fn complete(names: &[&str]) -> Graph {
    Graph::complete(names.iter().map(|n| atom(n)))
}

/// The Fano plane on points `1..7`.
pub fn fano() -> Psts {
    let lines = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    let name = |k: i32| atom(&k.to_string());
    let points: Vec<VertexLabel> = (1..=7).map(name).collect();
    let triples: Vec<Vec<VertexLabel>> = lines.iter().map(|l| l.map(name).to_vec()).collect();
    Psts::new(&points, &triples).expect("Fano plane")
}

pub fn single_triple(a: &str, b: &str, c: &str) -> Psts {
    let pts = vec![atom(a), atom(b), atom(c)];
    Psts::new(&pts, std::slice::from_ref(&pts)).expect("one triple")
}
