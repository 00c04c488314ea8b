//! Graph homomorphisms, composition, exhaustive enumeration and a
//! pointwise commuting-diagram checker.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::label::VertexLabel;

/// Default bound on `|V(H)|^|V(G)|` for [`enumerate_homs`].
pub const DEFAULT_HOM_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("map is not defined on vertex {0}")]
    MapNotTotal(VertexLabel),
    #[error("image {image} of {vertex} is not a vertex of the target")]
    ImageOutsideTarget { vertex: VertexLabel, image: VertexLabel },
    #[error("image index {index} of {vertex} is out of range")]
    IndexOutOfRange { vertex: VertexLabel, index: usize },
    #[error("map is defined on {0}, which is not a source vertex")]
    ExtraneousVertex(VertexLabel),
    #[error("edge {{{0}, {1}}} is not preserved")]
    NotAHomomorphism(VertexLabel, VertexLabel),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("search space of {candidates} candidate maps exceeds the cap of {cap}")]
    SearchSpaceTooLarge { candidates: u128, cap: u128 },
}

/// Outcome of a check that reports its first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

/// A graph homomorphism. The map is stored by vertex index.
#[derive(Clone)]
pub struct Hom {
    src: Arc<Graph>,
    dst: Arc<Graph>,
    map: Vec<usize>,
}

impl PartialEq for Hom {
    fn eq(&self, other: &Hom) -> bool {
        self.map == other.map && same_graph(&self.src, &other.src) && same_graph(&self.dst, &other.dst)
    }
}

impl Eq for Hom {}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// First edge of `src` whose image under `map` is not an edge of `dst`.
pub(crate) fn first_broken_edge(src: &Graph, dst: &Graph, map: &[usize]) -> Option<(usize, usize)> {
    src.edges()
        .iter()
        .copied()
        .find(|&(i, j)| !dst.adjacent(map[i], map[j]))
}

impl Hom {
    /// Builds a homomorphism from an index map, checking the edge rule.
    pub fn new(src: Arc<Graph>, dst: Arc<Graph>, map: Vec<usize>) -> Result<Hom, CategoryError> {
        if map.len() != src.order() {
            return Err(CategoryError::DomainMismatch(format!(
                "map has {} entries for {} source vertices",
                map.len(),
                src.order()
            )));
        }
        if let Some((i, &index)) = map.iter().enumerate().find(|(_, &m)| m >= dst.order()) {
            return Err(CategoryError::IndexOutOfRange {
                vertex: src.label(i).clone(),
                index,
            });
        }
        if let Some((i, j)) = first_broken_edge(&src, &dst, &map) {
            return Err(CategoryError::NotAHomomorphism(
                src.label(i).clone(),
                src.label(j).clone(),
            ));
        }
        Ok(Hom { src, dst, map })
    }

    /// Caller guarantees the map is total and edge preserving.
    pub(crate) fn new_unchecked(src: Arc<Graph>, dst: Arc<Graph>, map: Vec<usize>) -> Hom {
        debug_assert_eq!(map.len(), src.order());
        debug_assert!(first_broken_edge(&src, &dst, &map).is_none());
        Hom { src, dst, map }
    }

    pub fn from_labels(
        src: Arc<Graph>,
        dst: Arc<Graph>,
        map: &BTreeMap<VertexLabel, VertexLabel>,
    ) -> Result<Hom, CategoryError> {
        let idx = label_map_to_indices(&src, &dst, map)?;
        Hom::new(src, dst, idx)
    }

    /// Builds the map by evaluating `f` on each source label.
    pub fn from_fn(
        src: Arc<Graph>,
        dst: Arc<Graph>,
        f: impl Fn(&VertexLabel) -> VertexLabel,
    ) -> Result<Hom, CategoryError> {
        let mut map = Vec::with_capacity(src.order());
        for v in src.vertices() {
            let image = f(v);
            match dst.index_of(&image) {
                Some(k) => map.push(k),
                None => {
                    return Err(CategoryError::ImageOutsideTarget {
                        vertex: v.clone(),
                        image,
                    })
                }
            }
        }
        Hom::new(src, dst, map)
    }

    pub fn identity(g: Arc<Graph>) -> Hom {
        let map = (0..g.order()).collect();
        Hom {
            src: g.clone(),
            dst: g,
            map,
        }
    }

    pub fn src(&self) -> &Arc<Graph> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Graph> {
        &self.dst
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        self.src.index_of(v).map(|i| self.dst.label(self.map[i]))
    }

    pub fn label_map(&self) -> BTreeMap<VertexLabel, VertexLabel> {
        self.src
            .vertices()
            .iter()
            .zip(&self.map)
            .map(|(v, &k)| (v.clone(), self.dst.label(k).clone()))
            .collect()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Hom) -> Result<Hom, CategoryError> {
        compose(self, first)
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            map: self
                .label_map()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Hom {")?;
        for (i, (v, &k)) in self.src.vertices().iter().zip(&self.map).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {v} -> {}", self.dst.label(k))?;
        }
        f.write_str(" }")
    }
}

/// JSON form of a homomorphism: `{"map": {"src": "dst", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub map: BTreeMap<String, String>,
}

impl HomJson {
    pub fn to_hom(&self, src: Arc<Graph>, dst: Arc<Graph>) -> Result<Hom, HomJsonError> {
        let mut map = BTreeMap::new();
        for (k, v) in &self.map {
            map.insert(k.parse()?, v.parse()?);
        }
        Ok(Hom::from_labels(src, dst, &map)?)
    }
}

#[derive(Debug, Error)]
pub enum HomJsonError {
    #[error(transparent)]
    Label(#[from] crate::label::LabelError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

fn label_map_to_indices(
    src: &Graph,
    dst: &Graph,
    map: &BTreeMap<VertexLabel, VertexLabel>,
) -> Result<Vec<usize>, CategoryError> {
    if let Some(extra) = map.keys().find(|k| !src.contains(k)) {
        return Err(CategoryError::ExtraneousVertex(extra.clone()));
    }
    src.vertices()
        .iter()
        .map(|v| {
            let image = map.get(v).ok_or_else(|| CategoryError::MapNotTotal(v.clone()))?;
            dst.index_of(image)
                .ok_or_else(|| CategoryError::ImageOutsideTarget {
                    vertex: v.clone(),
                    image: image.clone(),
                })
        })
        .collect()
}

/// Checks the homomorphism law for a label map, reporting the first edge
/// (in canonical order) whose image is not an edge.
pub fn is_homomorphism(
    src: &Graph,
    dst: &Graph,
    map: &BTreeMap<VertexLabel, VertexLabel>,
) -> Result<Verdict<(VertexLabel, VertexLabel)>, CategoryError> {
    let idx = label_map_to_indices(src, dst, map)?;
    Ok(match first_broken_edge(src, dst, &idx) {
        None => Verdict::Holds,
        Some((i, j)) => Verdict::Fails((src.label(i).clone(), src.label(j).clone())),
    })
}

/// `g ∘ f`.
pub fn compose(g: &Hom, f: &Hom) -> Result<Hom, CategoryError> {
    if !same_graph(&f.dst, &g.src) {
        return Err(CategoryError::DomainMismatch(
            "target of the first map differs from source of the second".into(),
        ));
    }
    Ok(Hom {
        src: f.src.clone(),
        dst: g.dst.clone(),
        map: f.map.iter().map(|&k| g.map[k]).collect(),
    })
}

/// Composes a path given in application order: `path[0]` first.
pub fn compose_path(path: &[&Hom]) -> Result<Hom, CategoryError> {
    let (first, rest) = path
        .split_first()
        .ok_or_else(|| CategoryError::DomainMismatch("empty path".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, h| compose(h, &acc))
}

pub fn identity(g: &Arc<Graph>) -> Hom {
    Hom::identity(g.clone())
}

fn candidate_count(g: &Graph, h: &Graph) -> u128 {
    let base = h.order() as u128;
    let mut total: u128 = 1;
    for _ in 0..g.order() {
        total = total.saturating_mul(base);
    }
    total
}

/// All homomorphisms `g -> h`, lexicographic in the index map.
///
/// Backtracking assigns vertices in canonical order and prunes as soon as an
/// edge to an earlier vertex is broken.
pub fn enumerate_homs(g: &Arc<Graph>, h: &Arc<Graph>, cap: u128) -> Result<Vec<Hom>, CategoryError> {
    let candidates = candidate_count(g, h);
    if candidates > cap {
        return Err(CategoryError::SearchSpaceTooLarge { candidates, cap });
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(g.order());
    hom_search(g, h, &mut map, &mut |m| {
        out.push(Hom::new_unchecked(g.clone(), h.clone(), m.to_vec()));
    });
    Ok(out)
}

fn hom_search(g: &Graph, h: &Graph, map: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    let i = map.len();
    if i == g.order() {
        emit(map);
        return;
    }
    for k in 0..h.order() {
        let ok = g
            .neighbors(i)
            .iter()
            .take_while(|&&j| j < i)
            .all(|&j| h.adjacent(map[j], k));
        if ok {
            map.push(k);
            hom_search(g, h, map, emit);
            map.pop();
        }
    }
}

/// Where two parallel composites first disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramWitness {
    /// Index of the failing pair in the input list.
    pub pair: usize,
    pub vertex: VertexLabel,
    pub left: VertexLabel,
    pub right: VertexLabel,
}

impl fmt::Display for DiagramWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair {}: vertex {} goes to {} on one side and {} on the other",
            self.pair, self.vertex, self.left, self.right
        )
    }
}

/// Checks that each listed pair of composites agrees on every source vertex.
pub fn diagram_commutes(pairs: &[(Hom, Hom)]) -> Result<Verdict<DiagramWitness>, CategoryError> {
    for (p, (l, r)) in pairs.iter().enumerate() {
        if !same_graph(&l.src, &r.src) || !same_graph(&l.dst, &r.dst) {
            return Err(CategoryError::DomainMismatch(format!(
                "pair {p} does not share source and target"
            )));
        }
    }
    for (p, (l, r)) in pairs.iter().enumerate() {
        if let Some(i) = (0..l.map.len()).find(|&i| l.map[i] != r.map[i]) {
            return Ok(Verdict::Fails(DiagramWitness {
                pair: p,
                vertex: l.src.label(i).clone(),
                left: l.dst.label(l.map[i]).clone(),
                right: r.dst.label(r.map[i]).clone(),
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// The projections `A × B -> A` and `A × B -> B`.
pub fn projections(a: &Arc<Graph>, b: &Arc<Graph>) -> (Arc<Graph>, Hom, Hom) {
    let prod = Arc::new(a.product(b));
    let m = b.order();
    let pa = (0..prod.order()).map(|k| k / m).collect();
    let pb = (0..prod.order()).map(|k| k % m).collect();
    (
        prod.clone(),
        Hom::new_unchecked(prod.clone(), a.clone(), pa),
        Hom::new_unchecked(prod, b.clone(), pb),
    )
}

/// The pairing `⟨f, g⟩: X -> A × B`, `x ↦ (f(x), g(x))`. `product` must be
/// `f.dst() × g.dst()`.
pub fn pairing(f: &Hom, g: &Hom, product: &Arc<Graph>) -> Result<Hom, CategoryError> {
    if !same_graph(&f.src, &g.src) {
        return Err(CategoryError::DomainMismatch(
            "pairing needs a common source".into(),
        ));
    }
    let m = g.dst.order();
    if product.order() != f.dst.order() * m {
        return Err(CategoryError::DomainMismatch(
            "target is not the product of the two codomains".into(),
        ));
    }
    let map = f.map.iter().zip(&g.map).map(|(&a, &b)| a * m + b).collect();
    Hom::new(f.src.clone(), product.clone(), map)
}
