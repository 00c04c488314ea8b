//! The pendant-edge monad `T` and graphs with a perfect matching.
//!
//! `T(A)` attaches a new leaf to every vertex: vertex `x` of `A` becomes
//! `x~0`, its new leaf is `x~1`. The unit is `x ↦ x~0` and the
//! multiplication folds `T²(A)` onto `T(A)` by `v~i~j ↦ v~(i xor j)`.
//!
//! Algebras for `T` are exactly perfect matchings: a structure map is fixed
//! on the `x~0` by the unit law, and `m(x) = α(x~1)` is an involution along
//! edges. [`matching_to_algebra`] and [`algebra_to_matching`] are mutually
//! inverse.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, Hom, Verdict};
use crate::graph::Graph;
use crate::io::Decorations;
use crate::label::{Bit, VertexLabel};
use crate::monad::{self, AlgebraWitness, GraphMonad, LawReport, MonadError};

/// Default bound on the graph order for the matching and algebra enumerators.
pub const DEFAULT_MATCHING_CAP: usize = 12;

/// The pendant-edge monad.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pendant;

impl GraphMonad for Pendant {
    const NAME: &'static str = "T";

    fn object(a: &Graph) -> Graph {
        let vertices = a
            .vertices()
            .iter()
            .flat_map(|x| Bit::ALL.map(|b| VertexLabel::tagged(x.clone(), b)))
            .collect();
        // x~b sits at index 2i + b.
        let original = a.edges().iter().map(|&(i, j)| (2 * i, 2 * j));
        let pendant = (0..a.order()).map(|i| (2 * i, 2 * i + 1));
        Graph::from_sorted(vertices, original.chain(pendant))
    }

    fn map_vertex(
        v: &VertexLabel,
        f: &mut dyn FnMut(&VertexLabel) -> Option<VertexLabel>,
    ) -> Option<VertexLabel> {
        let (x, bit) = v.as_tagged()?;
        Some(VertexLabel::tagged(f(x)?, bit))
    }

    fn unit_vertex(v: &VertexLabel) -> VertexLabel {
        VertexLabel::tagged(v.clone(), Bit::Zero)
    }

    fn mult_vertex(v: &VertexLabel) -> Result<VertexLabel, MonadError> {
        let malformed = || MonadError::MalformedNestedLabel(v.clone());
        let (inner, j) = v.as_tagged().ok_or_else(malformed)?;
        let (base, i) = inner.as_tagged().ok_or_else(malformed)?;
        Ok(VertexLabel::tagged(base.clone(), i.xor(j)))
    }
}

pub fn t_object(a: &Graph) -> Graph {
    Pendant::object(a)
}

pub fn t_morphism(f: &Hom) -> Result<Hom, MonadError> {
    monad::apply_morphism::<Pendant>(f)
}

pub fn eta_t(a: &Arc<Graph>) -> Hom {
    monad::unit::<Pendant>(a).expect("the unit of T is a homomorphism")
}

pub fn mu_t(a: &Graph) -> Hom {
    monad::mult::<Pendant>(a).expect("the multiplication of T is a homomorphism")
}

pub fn check_monad_laws_t(a: &Arc<Graph>) -> LawReport {
    monad::check_monad_laws::<Pendant>(a).expect("T's structure maps are homomorphisms")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    OddOrder(usize),
    Undefined(VertexLabel),
    NotAVertex {
        vertex: VertexLabel,
        partner: VertexLabel,
    },
    NotAnEdge {
        vertex: VertexLabel,
        partner: VertexLabel,
    },
    NotAnInvolution {
        vertex: VertexLabel,
        partner: VertexLabel,
        back: VertexLabel,
    },
    Extraneous(VertexLabel),
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingViolation::OddOrder(n) => write!(f, "graph has odd order {n}"),
            MatchingViolation::Undefined(v) => write!(f, "no partner given for {v}"),
            MatchingViolation::NotAVertex { vertex, partner } => {
                write!(f, "partner {partner} of {vertex} is not a vertex")
            }
            MatchingViolation::NotAnEdge { vertex, partner } => {
                write!(f, "{{{vertex}, {partner}}} is not an edge")
            }
            MatchingViolation::NotAnInvolution {
                vertex,
                partner,
                back,
            } => {
                write!(f, "{vertex} -> {partner} but {partner} -> {back}")
            }
            MatchingViolation::Extraneous(v) => write!(f, "{v} is not a vertex of the graph"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("not a perfect matching: {0}")]
    InvalidMatching(MatchingViolation),
    #[error("not a T-algebra: {0}")]
    NotAnAlgebra(AlgebraWitness),
    #[error("{map} is not a Perf morphism: fails at {vertex}")]
    NotEquivariant { map: &'static str, vertex: VertexLabel },
    #[error("graph has {order} vertices, above the enumeration cap of {cap}")]
    SearchSpaceTooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A graph with an involution `m` such that `{x, m(x)}` is always an edge.
#[derive(Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    graph: Arc<Graph>,
    partner: Vec<usize>,
}

fn first_violation(g: &Graph, partner: &[usize]) -> Option<MatchingViolation> {
    if g.order() % 2 == 1 {
        return Some(MatchingViolation::OddOrder(g.order()));
    }
    (0..g.order()).find_map(|i| {
        let p = partner[i];
        if !g.adjacent(i, p) {
            Some(MatchingViolation::NotAnEdge {
                vertex: g.label(i).clone(),
                partner: g.label(p).clone(),
            })
        } else if partner[p] != i {
            Some(MatchingViolation::NotAnInvolution {
                vertex: g.label(i).clone(),
                partner: g.label(p).clone(),
                back: g.label(partner[p]).clone(),
            })
        } else {
            None
        }
    })
}

/// Validates a partner map given by labels, reporting the first offending
/// vertex in canonical order.
pub fn check_matching(g: &Graph, map: &BTreeMap<VertexLabel, VertexLabel>) -> Verdict<MatchingViolation> {
    if g.order() % 2 == 1 {
        return Verdict::Fails(MatchingViolation::OddOrder(g.order()));
    }
    if let Some(extra) = map.keys().find(|k| !g.contains(k)) {
        return Verdict::Fails(MatchingViolation::Extraneous(extra.clone()));
    }
    let mut partner = Vec::with_capacity(g.order());
    for v in g.vertices() {
        let Some(p) = map.get(v) else {
            return Verdict::Fails(MatchingViolation::Undefined(v.clone()));
        };
        let Some(k) = g.index_of(p) else {
            return Verdict::Fails(MatchingViolation::NotAVertex {
                vertex: v.clone(),
                partner: p.clone(),
            });
        };
        partner.push(k);
    }
    match first_violation(g, &partner) {
        None => Verdict::Holds,
        Some(v) => Verdict::Fails(v),
    }
}

impl PerfectMatching {
    pub fn new(graph: Arc<Graph>, partner: Vec<usize>) -> Result<PerfectMatching, MatchingError> {
        if partner.len() != graph.order() {
            return Err(CategoryError::DomainMismatch(format!(
                "partner map has {} entries for {} vertices",
                partner.len(),
                graph.order()
            ))
            .into());
        }
        if partner.iter().any(|&p| p >= graph.order()) {
            return Err(CategoryError::DomainMismatch("partner index out of range".into()).into());
        }
        match first_violation(&graph, &partner) {
            None => Ok(PerfectMatching { graph, partner }),
            Some(v) => Err(MatchingError::InvalidMatching(v)),
        }
    }

    pub fn from_labels(
        graph: Arc<Graph>,
        map: &BTreeMap<VertexLabel, VertexLabel>,
    ) -> Result<PerfectMatching, MatchingError> {
        if let Verdict::Fails(v) = check_matching(&graph, map) {
            return Err(MatchingError::InvalidMatching(v));
        }
        let partner = graph
            .vertices()
            .iter()
            .map(|v| graph.index_of(&map[v]).expect("checked"))
            .collect();
        Ok(PerfectMatching { graph, partner })
    }

    /// From a set of disjoint edges covering every vertex, given as index pairs.
    pub fn from_edges(graph: Arc<Graph>, edges: &[(usize, usize)]) -> Result<PerfectMatching, MatchingError> {
        let mut partner = vec![usize::MAX; graph.order()];
        for &(i, j) in edges {
            partner[i] = j;
            partner[j] = i;
        }
        if let Some(i) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(MatchingError::InvalidMatching(MatchingViolation::Undefined(
                graph.label(i).clone(),
            )));
        }
        PerfectMatching::new(graph, partner)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn partner_index(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn partner(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        self.graph.index_of(v).map(|i| self.graph.label(self.partner[i]))
    }

    /// Matched edges as sorted index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }

    pub fn label_map(&self) -> BTreeMap<VertexLabel, VertexLabel> {
        (0..self.partner.len())
            .map(|i| {
                (
                    self.graph.label(i).clone(),
                    self.graph.label(self.partner[i]).clone(),
                )
            })
            .collect()
    }

    pub fn decorations(&self) -> Decorations {
        Decorations {
            bold: self.edges().into_iter().collect(),
            ..Decorations::default()
        }
    }

    pub fn to_json(&self) -> MatchingJson {
        MatchingJson {
            graph: Some(GraphRef::Inline(crate::io::serialize_edge_list(&self.graph))),
            matching: self
                .label_map()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }
}

impl fmt::Debug for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PerfectMatching {")?;
        for (n, (i, j)) in self.edges().into_iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, " {}-{}", self.graph.label(i), self.graph.label(j))?;
        }
        f.write_str(" }")
    }
}

/// Where the graph of a matching file comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    /// Edge-list text.
    Inline(String),
    /// Path to an edge-list file, relative to the JSON file.
    File { file: String },
}

/// `{"graph": <edge list or {"file": path}>, "matching": {token: token, ...}}`.
///
/// Both directions of every matched pair are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphRef>,
    pub matching: BTreeMap<String, String>,
}

impl MatchingJson {
    pub fn label_map(&self) -> Result<BTreeMap<VertexLabel, VertexLabel>, crate::label::LabelError> {
        self.matching
            .iter()
            .map(|(k, v)| Ok((k.parse()?, v.parse()?)))
            .collect()
    }
}

/// An algebra for [`Pendant`]: a structure map `α: T(A) -> A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TAlgebra {
    alpha: Hom,
}

impl TAlgebra {
    pub fn new(alpha: Hom) -> Result<TAlgebra, MatchingError> {
        match is_t_algebra(&alpha)? {
            Verdict::Holds => Ok(TAlgebra { alpha }),
            Verdict::Fails(w) => Err(MatchingError::NotAnAlgebra(w)),
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.alpha.dst()
    }

    pub fn structure_map(&self) -> &Hom {
        &self.alpha
    }
}

pub fn is_t_algebra(alpha: &Hom) -> Result<Verdict<AlgebraWitness>, MonadError> {
    monad::is_algebra::<Pendant>(alpha)
}

/// Whether `f: A -> B` commutes with the matchings, `f(m(x)) = m'(f(x))`.
/// Reports the first vertex where it does not.
pub fn is_perf_morphism(
    f: &Hom,
    a: &PerfectMatching,
    b: &PerfectMatching,
) -> Result<Verdict<VertexLabel>, CategoryError> {
    if **f.src() != *a.graph || **f.dst() != *b.graph {
        return Err(CategoryError::DomainMismatch(
            "map does not run between the matched graphs".into(),
        ));
    }
    Ok(
        match (0..a.partner.len()).find(|&x| f.apply_index(a.partner[x]) != b.partner[f.apply_index(x)]) {
            None => Verdict::Holds,
            Some(x) => Verdict::Fails(a.graph.label(x).clone()),
        },
    )
}

/// `α(x~0) = x`, `α(x~1) = m(x)`.
pub fn matching_to_algebra(pm: &PerfectMatching) -> TAlgebra {
    let ta = Arc::new(t_object(&pm.graph));
    let map = (0..pm.graph.order()).flat_map(|i| [i, pm.partner[i]]).collect();
    TAlgebra {
        alpha: Hom::new(ta, pm.graph.clone(), map).expect("a matching gives a homomorphism"),
    }
}

/// `m(x) = α(x~1)`.
pub fn algebra_to_matching(alg: &TAlgebra) -> PerfectMatching {
    let g = alg.graph().clone();
    let alpha = &alg.alpha;
    let partner = g
        .vertices()
        .iter()
        .map(|x| {
            let leaf = VertexLabel::tagged(x.clone(), Bit::One);
            let image = alpha.apply(&leaf).expect("leaf is a vertex of T(A)");
            g.index_of(image).expect("image lies in A")
        })
        .collect();
    PerfectMatching::new(g, partner).expect("algebra laws give a perfect matching")
}

/// Product in Perf: the graph product with `m(a, b) = (m(a), m'(b))`.
pub fn product_perf(a: &PerfectMatching, b: &PerfectMatching) -> PerfectMatching {
    let graph = Arc::new(a.graph.product(&b.graph));
    let nb = b.graph.order();
    let partner = (0..graph.order())
        .map(|k| a.partner[k / nb] * nb + b.partner[k % nb])
        .collect();
    PerfectMatching::new(graph, partner).expect("product of matchings is a matching")
}

/// The projections out of [`product_perf`]`(a, b)`, both Perf morphisms.
pub fn product_projections(
    product: &PerfectMatching,
    a: &PerfectMatching,
    b: &PerfectMatching,
) -> (Hom, Hom) {
    let nb = b.graph.order();
    let n = product.graph.order();
    (
        Hom::new(
            product.graph.clone(),
            a.graph.clone(),
            (0..n).map(|k| k / nb).collect(),
        )
        .expect("projection"),
        Hom::new(
            product.graph.clone(),
            b.graph.clone(),
            (0..n).map(|k| k % nb).collect(),
        )
        .expect("projection"),
    )
}

/// Equalizer in Perf of `f, g: (A, m) -> (B, m')`: the restriction of `m` to
/// the subgraph induced on `{v : f(v) = g(v)}`, with its inclusion.
pub fn equalizer_perf(
    f: &Hom,
    g: &Hom,
    a: &PerfectMatching,
    b: &PerfectMatching,
) -> Result<(PerfectMatching, Hom), MatchingError> {
    for (name, h) in [("f", f), ("g", g)] {
        if let Verdict::Fails(vertex) = is_perf_morphism(h, a, b)? {
            return Err(MatchingError::NotEquivariant { map: name, vertex });
        }
    }
    let keep: Vec<usize> = (0..a.graph.order())
        .filter(|&v| f.apply_index(v) == g.apply_index(v))
        .collect();
    let sub = Arc::new(a.graph.induced_by_indices(&keep));
    let mut position = vec![usize::MAX; a.graph.order()];
    for (k, &v) in keep.iter().enumerate() {
        position[v] = k;
    }
    // f(m(v)) = m'(f(v)) = m'(g(v)) = g(m(v)), so m(v) is kept with v.
    let partner = keep.iter().map(|&v| position[a.partner[v]]).collect();
    let restricted = PerfectMatching::new(sub.clone(), partner)?;
    let inclusion = Hom::new(sub, a.graph.clone(), keep)?;
    Ok((restricted, inclusion))
}

/// Every Perf morphism `a -> b`, lexicographic in the vertex map.
///
/// Choosing `f(x)` forces `f(m(x)) = m'(f(x))`, so the search runs over one
/// vertex per matched pair; `hom_cap` bounds the `|B|^(|A|/2)` candidates.
pub fn enumerate_perf_morphisms(
    a: &PerfectMatching,
    b: &PerfectMatching,
    hom_cap: u128,
) -> Result<Vec<Hom>, CategoryError> {
    let pairs = a.graph.order() / 2;
    let candidates = (0..pairs).fold(1u128, |t, _| t.saturating_mul(b.graph.order() as u128));
    if candidates > hom_cap {
        return Err(CategoryError::SearchSpaceTooLarge {
            candidates,
            cap: hom_cap,
        });
    }
    let mut map = vec![None; a.graph.order()];
    let mut found = Vec::new();
    perf_search(a, b, 0, &mut map, &mut found);
    found.sort();
    Ok(found
        .into_iter()
        .map(|m| Hom::new(a.graph.clone(), b.graph.clone(), m).expect("edges were checked"))
        .collect())
}

fn perf_search(
    a: &PerfectMatching,
    b: &PerfectMatching,
    from: usize,
    map: &mut Vec<Option<usize>>,
    found: &mut Vec<Vec<usize>>,
) {
    let Some(x) = (from..map.len()).find(|&x| map[x].is_none()) else {
        found.push(map.iter().map(|v| v.expect("complete")).collect());
        return;
    };
    let mx = a.partner[x];
    let fits = |map: &[Option<usize>], v: usize, image: usize| {
        a.graph
            .neighbors(v)
            .iter()
            .all(|&w| map[w].is_none_or(|iw| b.graph.adjacent(image, iw)))
    };
    for k in 0..b.graph.order() {
        map[x] = Some(k);
        map[mx] = Some(b.partner[k]);
        if fits(map, x, k) && fits(map, mx, b.partner[k]) {
            perf_search(a, b, x + 1, map, found);
        }
        map[x] = None;
        map[mx] = None;
    }
}

/// Every perfect matching of `g`, by backtracking: the first unmatched vertex
/// is paired with each unmatched neighbour in turn. Sorted by partner vector.
pub fn enumerate_matchings(g: &Arc<Graph>, cap: usize) -> Result<Vec<PerfectMatching>, MatchingError> {
    if g.order() > cap {
        return Err(MatchingError::SearchSpaceTooLarge {
            order: g.order(),
            cap,
        });
    }
    let mut found = Vec::new();
    if g.order().is_multiple_of(2) {
        let mut partner = vec![usize::MAX; g.order()];
        match_search(g, &mut partner, &mut found);
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|partner| PerfectMatching {
            graph: g.clone(),
            partner,
        })
        .collect())
}

fn match_search(g: &Graph, partner: &mut [usize], out: &mut Vec<Vec<usize>>) {
    let Some(v) = partner.iter().position(|&p| p == usize::MAX) else {
        out.push(partner.to_vec());
        return;
    };
    for &w in g.neighbors(v) {
        if partner[w] == usize::MAX {
            partner[v] = w;
            partner[w] = v;
            match_search(g, partner, out);
            partner[v] = usize::MAX;
            partner[w] = usize::MAX;
        }
    }
}

/// Every `T`-algebra on `g`, found by searching structure maps directly
/// (independently of [`enumerate_matchings`]).
pub fn enumerate_t_algebras(g: &Arc<Graph>, cap: usize) -> Result<Vec<TAlgebra>, MatchingError> {
    if g.order() > cap {
        return Err(MatchingError::SearchSpaceTooLarge {
            order: g.order(),
            cap,
        });
    }
    Ok(monad::enumerate_algebras::<Pendant>(g)?
        .into_iter()
        .map(|alpha| TAlgebra { alpha })
        .collect())
}

/// Applies an algebra morphism check to the algebras of two matchings.
pub fn is_t_algebra_morphism(
    h: &Hom,
    a: &TAlgebra,
    b: &TAlgebra,
) -> Result<Verdict<crate::category::DiagramWitness>, MonadError> {
    monad::is_algebra_morphism::<Pendant>(h, &a.alpha, &b.alpha)
}

/// Checks `e ∘ k = h` over index maps; `k` is `None` if no factorization exists.
pub fn factor_through(h: &Hom, inclusion: &Hom) -> Option<Vec<usize>> {
    let image: BTreeMap<usize, usize> = inclusion
        .indices()
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, k))
        .collect();
    h.indices().iter().map(|v| image.get(v).copied()).collect()
}

/// The set of matched edges as label pairs.
pub fn matched_pairs(pm: &PerfectMatching) -> BTreeSet<(VertexLabel, VertexLabel)> {
    pm.edges()
        .into_iter()
        .map(|(i, j)| (pm.graph.label(i).clone(), pm.graph.label(j).clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{enumerate_homs, DEFAULT_HOM_CAP};
    use crate::fixtures;
    use crate::label::atom;

    fn t(x: &str, b: Bit) -> VertexLabel {
        VertexLabel::tagged(atom(x), b)
    }

    #[test]
    fn t_of_k2() {
        let k2 = Graph::complete(["a", "b"].map(atom));
        let tk2 = t_object(&k2);
        assert_eq!(tk2.order(), 4);
        let edges: BTreeSet<_> = tk2.edge_labels().map(|(u, v)| (u.clone(), v.clone())).collect();
        let expected: BTreeSet<_> = [
            (t("a", Bit::Zero), t("a", Bit::One)),
            (t("a", Bit::Zero), t("b", Bit::Zero)),
            (t("b", Bit::Zero), t("b", Bit::One)),
        ]
        .into_iter()
        .collect();
        assert_eq!(edges, expected);
        assert_eq!(t_object(&Graph::empty()), Graph::empty());
    }

    #[test]
    fn t_object_vertex_order_matches_index_layout() {
        let g = fixtures::square_with_chord();
        let tg = t_object(&g);
        assert!(tg.vertices().windows(2).all(|w| w[0] < w[1]));
        for (i, x) in g.vertices().iter().enumerate() {
            assert_eq!(tg.label(2 * i + 1), &VertexLabel::tagged(x.clone(), Bit::One));
        }
    }

    #[test]
    fn mu_xor_examples() {
        let v = atom("v");
        let tt = |i, j| VertexLabel::tagged(VertexLabel::tagged(v.clone(), i), j);
        assert_eq!(
            Pendant::mult_vertex(&tt(Bit::One, Bit::One)).unwrap(),
            t("v", Bit::Zero)
        );
        assert_eq!(
            Pendant::mult_vertex(&tt(Bit::Zero, Bit::Zero)).unwrap(),
            t("v", Bit::Zero)
        );
        assert_eq!(
            Pendant::mult_vertex(&tt(Bit::One, Bit::Zero)).unwrap(),
            t("v", Bit::One)
        );
        assert!(Pendant::mult_vertex(&t("v", Bit::One)).is_err());
    }

    #[test]
    fn inclusion_lifts_leaf_to_leaf() {
        let k2 = Arc::new(Graph::complete(["a", "b"].map(atom)));
        let k3 = Arc::new(Graph::complete(["a", "b", "c"].map(atom)));
        let inc = Hom::new(k2, k3, vec![0, 1]).unwrap();
        let tf = t_morphism(&inc).unwrap();
        assert_eq!(tf.apply(&t("a", Bit::One)), Some(&t("a", Bit::One)));
        assert_eq!(tf.apply(&t("b", Bit::Zero)), Some(&t("b", Bit::Zero)));
        assert_eq!(tf.indices().len(), 4);
    }

    #[test]
    fn fold_is_a_homomorphism_on_small_graphs() {
        for g in crate::family::labeled_graphs_up_to(4) {
            let mu = mu_t(&g);
            assert_eq!(mu.src().order(), 4 * g.order());
        }
    }

    #[test]
    fn laws_on_fixture_and_empty() {
        assert!(check_monad_laws_t(&Arc::new(fixtures::square_with_chord())).all_hold());
        assert!(check_monad_laws_t(&Arc::new(Graph::empty())).all_hold());
    }

    #[test]
    fn example_table_algebras() {
        let g = Arc::new(fixtures::square_with_chord());
        let (m1, m2) = fixtures::example_matchings(&g);
        let a1 = matching_to_algebra(&m1);
        assert!(is_t_algebra(a1.structure_map()).unwrap().holds());
        // Row alpha_1: a1 -> b, b1 -> a, c1 -> d, d1 -> c.
        let alpha = a1.structure_map();
        for (x, y) in [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")] {
            assert_eq!(alpha.apply(&t(x, Bit::One)), Some(&atom(y)));
            assert_eq!(alpha.apply(&t(x, Bit::Zero)), Some(&atom(x)));
        }
        let alpha2 = matching_to_algebra(&m2);
        for (x, y) in [("a", "c"), ("b", "d"), ("c", "a"), ("d", "b")] {
            assert_eq!(alpha2.structure_map().apply(&t(x, Bit::One)), Some(&atom(y)));
        }
        assert_eq!(algebra_to_matching(&a1), m1);
    }

    #[test]
    fn identity_matching_is_not_an_algebra() {
        let g = Arc::new(fixtures::square_with_chord());
        let tg = Arc::new(t_object(&g));
        // alpha(x~1) = x collapses the pendant edge.
        let map = (0..g.order()).flat_map(|i| [i, i]).collect();
        assert!(Hom::new(tg, g, map).is_err());
    }

    #[test]
    fn a_homomorphic_non_algebra_is_rejected_with_witness() {
        // On K4, alpha(x~1) = next vertex cyclically is a homomorphism but
        // not an involution.
        let k4 = Arc::new(Graph::complete(["a", "b", "c", "d"].map(atom)));
        let tk4 = Arc::new(t_object(&k4));
        let map = (0..4).flat_map(|i| [i, (i + 1) % 4]).collect();
        let alpha = Hom::new(tk4, k4, map).unwrap();
        let v = is_t_algebra(&alpha).unwrap();
        assert_eq!(v.witness().unwrap().law, crate::monad::AlgebraLaw::Square);
        assert!(matches!(
            TAlgebra::new(alpha),
            Err(MatchingError::NotAnAlgebra(_))
        ));
    }

    #[test]
    fn matching_validation() {
        let g = fixtures::square_with_chord();
        let m = |pairs: &[(&str, &str)]| -> BTreeMap<_, _> {
            pairs.iter().map(|(a, b)| (atom(a), atom(b))).collect()
        };
        assert!(check_matching(&g, &m(&[("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")])).holds());
        assert_eq!(
            check_matching(&g, &m(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "c")])),
            Verdict::Fails(MatchingViolation::NotAnInvolution {
                vertex: atom("a"),
                partner: atom("b"),
                back: atom("c"),
            })
        );
        assert_eq!(
            check_matching(&g, &m(&[("a", "d"), ("b", "c"), ("c", "b"), ("d", "a")])),
            Verdict::Fails(MatchingViolation::NotAnEdge {
                vertex: atom("a"),
                partner: atom("d")
            })
        );
        assert_eq!(
            check_matching(&g, &m(&[("a", "b"), ("b", "a"), ("c", "d")])),
            Verdict::Fails(MatchingViolation::Undefined(atom("d")))
        );
        let path = crate::io::parse_edge_list("a b\nb c").unwrap();
        assert_eq!(
            check_matching(&path, &m(&[("a", "b"), ("b", "a"), ("c", "b")])),
            Verdict::Fails(MatchingViolation::OddOrder(3))
        );
    }

    #[test]
    fn enumeration_examples() {
        let g = Arc::new(fixtures::square_with_chord());
        let ms = enumerate_matchings(&g, DEFAULT_MATCHING_CAP).unwrap();
        assert_eq!(ms.len(), 2);
        let k4 = Arc::new(Graph::complete(["a", "b", "c", "d"].map(atom)));
        assert_eq!(enumerate_matchings(&k4, DEFAULT_MATCHING_CAP).unwrap().len(), 3);
        let k3 = Arc::new(Graph::complete(["a", "b", "c"].map(atom)));
        assert!(enumerate_matchings(&k3, DEFAULT_MATCHING_CAP).unwrap().is_empty());
        assert_eq!(enumerate_t_algebras(&k4, DEFAULT_MATCHING_CAP).unwrap().len(), 3);
        assert!(matches!(
            enumerate_matchings(&k4, 3),
            Err(MatchingError::SearchSpaceTooLarge { order: 4, cap: 3 })
        ));
    }

    #[test]
    fn k4_matchings_agree_with_involution_brute_force() {
        // Oracle: all 4^4 maps, keep fixed-point-free involutions along edges.
        let k4 = Arc::new(Graph::complete(["a", "b", "c", "d"].map(atom)));
        let mut brute = Vec::new();
        for code in 0..256usize {
            let p: Vec<usize> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
            if (0..4).all(|i| p[i] != i && p[p[i]] == i) {
                brute.push(p);
            }
        }
        brute.sort();
        let got: Vec<_> = enumerate_matchings(&k4, 12)
            .unwrap()
            .iter()
            .map(|m| m.partners().to_vec())
            .collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn k12_algebra_search_stays_tractable() {
        let names: Vec<String> = (0..12).map(|i| format!("v{i:02}")).collect();
        let k12 = Arc::new(Graph::complete(names.iter().map(|n| atom(n))));
        // (12 - 1)!! = 10395
        assert_eq!(enumerate_matchings(&k12, 12).unwrap().len(), 10395);
        assert_eq!(enumerate_t_algebras(&k12, 12).unwrap().len(), 10395);
    }

    #[test]
    fn product_of_swaps() {
        let a = fixtures::k2_swap("a", "b");
        let x = fixtures::k2_swap("x", "y");
        let p = product_perf(&a, &x);
        let pl = |l: &str, r: &str| VertexLabel::pair(atom(l), atom(r));
        assert_eq!(p.partner(&pl("a", "x")), Some(&pl("b", "y")));
        assert_eq!(p.partner(&pl("a", "y")), Some(&pl("b", "x")));
        assert_eq!(p.graph().order(), 4);
        let (pa, pb) = product_projections(&p, &a, &x);
        assert!(is_perf_morphism(&pa, &p, &a).unwrap().holds());
        assert!(is_perf_morphism(&pb, &p, &x).unwrap().holds());

        let empty = PerfectMatching::new(Arc::new(Graph::empty()), vec![]).unwrap();
        assert_eq!(product_perf(&a, &empty).graph().order(), 0);
    }

    #[test]
    fn example_product_is_a_matching_on_16_vertices() {
        let g = Arc::new(fixtures::square_with_chord());
        let (m1, m2) = fixtures::example_matchings(&g);
        let p = product_perf(&m1, &m2);
        assert_eq!(p.graph().order(), 16);
        assert!(check_matching(p.graph(), &p.label_map()).holds());
    }

    #[test]
    fn equalizer_trivial_cases() {
        let a = fixtures::k2_swap("a", "b");
        let id = Hom::identity(a.graph().clone());
        let (e, inc) = equalizer_perf(&id, &id, &a, &a).unwrap();
        assert_eq!(&e, &a);
        assert_eq!(inc, id);

        let swap = Hom::new(a.graph().clone(), a.graph().clone(), vec![1, 0]).unwrap();
        let (e, inc) = equalizer_perf(&id, &swap, &a, &a).unwrap();
        assert_eq!(e.graph().order(), 0);
        assert_eq!(inc.indices().len(), 0);
    }

    #[test]
    fn equalizer_rejects_non_equivariant_maps() {
        // The transposition (b c) is an automorphism of K4 that does not
        // preserve the matching ab|cd.
        let k4 = Arc::new(Graph::complete(["a", "b", "c", "d"].map(atom)));
        let m = PerfectMatching::from_edges(k4.clone(), &[(0, 1), (2, 3)]).unwrap();
        let id = Hom::identity(k4.clone());
        let bc = Hom::new(k4.clone(), k4, vec![0, 2, 1, 3]).unwrap();
        assert!(matches!(
            equalizer_perf(&id, &bc, &m, &m),
            Err(MatchingError::NotEquivariant { map: "g", .. })
        ));
    }

    #[test]
    fn perf_morphisms_are_algebra_morphisms_on_k4() {
        let k4 = Arc::new(Graph::complete(["a", "b", "c", "d"].map(atom)));
        let ms = enumerate_matchings(&k4, 12).unwrap();
        for m1 in &ms {
            for m2 in &ms {
                let (a1, a2) = (matching_to_algebra(m1), matching_to_algebra(m2));
                for h in enumerate_homs(&k4, &k4, DEFAULT_HOM_CAP).unwrap() {
                    assert_eq!(
                        is_perf_morphism(&h, m1, m2).unwrap().holds(),
                        is_t_algebra_morphism(&h, &a1, &a2).unwrap().holds()
                    );
                }
            }
        }
    }

    #[test]
    fn perf_search_agrees_with_filtered_homs() {
        let structures: Vec<PerfectMatching> = crate::family::labeled_graphs_up_to(4)
            .flat_map(|g| enumerate_matchings(&Arc::new(g), 12).unwrap())
            .collect();
        for a in &structures {
            for b in &structures {
                let filtered: Vec<Hom> = enumerate_homs(&a.graph, &b.graph, DEFAULT_HOM_CAP)
                    .unwrap()
                    .into_iter()
                    .filter(|h| is_perf_morphism(h, a, b).unwrap().holds())
                    .collect();
                assert_eq!(enumerate_perf_morphisms(a, b, DEFAULT_HOM_CAP).unwrap(), filtered);
            }
        }
    }

    #[test]
    fn matching_json_round_trip() {
        let g = Arc::new(fixtures::square_with_chord());
        let (m1, _) = fixtures::example_matchings(&g);
        let json = serde_json::to_string(&m1.to_json()).unwrap();
        let back: MatchingJson = serde_json::from_str(&json).unwrap();
        let Some(GraphRef::Inline(text)) = &back.graph else {
            panic!()
        };
        let g2 = Arc::new(crate::io::parse_edge_list(text).unwrap());
        assert_eq!(
            PerfectMatching::from_labels(g2, &back.label_map().unwrap()).unwrap(),
            m1
        );
        let by_file: MatchingJson =
            serde_json::from_str(r#"{"graph": {"file": "g.txt"}, "matching": {}}"#).unwrap();
        assert_eq!(by_file.graph, Some(GraphRef::File { file: "g.txt".into() }));
    }
}
