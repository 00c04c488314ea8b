//! The triangle monad `S` and partial Steiner triple systems.
//!
//! `S(G)` has a vertex `{u}` for every vertex of `G` and a vertex `{u,v}` for
//! every edge, so every edge of `G` grows a triangle `{u}, {v}, {u,v}`. The
//! unit is `u ↦ {u}`; the multiplication sends a vertex of `S²(G)` (a set of
//! sets of vertices) to the symmetric difference of its members.
//!
//! An `S`-algebra `α` completes every edge `{u,v}` to a triangle
//! `{u, v, α({u,v})}`, and the square law forces those triangles to form a
//! partial Steiner triple system on `V(G)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, DiagramWitness, Hom, Verdict};
use crate::graph::Graph;
use crate::io::Decorations;
use crate::label::{LabelError, LabelSet, VertexLabel};
use crate::monad::{self, AlgebraWitness, GraphMonad, LawReport, MonadError};

/// Default bound on the graph order for the triple-system and algebra enumerators.
pub const DEFAULT_STEINER_CAP: usize = 9;

/// The triangle monad.
#[derive(Debug, Clone, Copy, Default)]
pub struct Triangle;

impl GraphMonad for Triangle {
    const NAME: &'static str = "S";

    fn object(g: &Graph) -> Graph {
        let single = |i: usize| VertexLabel::singleton(g.label(i).clone());
        let mut vertices: Vec<VertexLabel> = (0..g.order()).map(single).collect();
        let mut edges = Vec::with_capacity(3 * g.size());
        for &(i, j) in g.edges() {
            let e =
                VertexLabel::pair_set(g.label(i).clone(), g.label(j).clone()).expect("edge endpoints differ");
            edges.push((single(i), single(j)));
            edges.push((e.clone(), single(i)));
            edges.push((e.clone(), single(j)));
            vertices.push(e);
        }
        Graph::from_labeled_edges(vertices, edges)
    }

    fn map_vertex(
        v: &VertexLabel,
        f: &mut dyn FnMut(&VertexLabel) -> Option<VertexLabel>,
    ) -> Option<VertexLabel> {
        let elems = v.as_set()?.elems().iter().map(f).collect::<Option<Vec<_>>>()?;
        LabelSet::from_elems(elems).ok().map(VertexLabel::Set)
    }

    fn unit_vertex(v: &VertexLabel) -> VertexLabel {
        VertexLabel::singleton(v.clone())
    }

    fn mult_vertex(v: &VertexLabel) -> Result<VertexLabel, MonadError> {
        let malformed = || MonadError::MalformedNestedLabel(v.clone());
        let mut acc = BTreeSet::new();
        for member in v.as_set().ok_or_else(malformed)?.elems() {
            for x in member.as_set().ok_or_else(malformed)?.elems() {
                if !acc.remove(x) {
                    acc.insert(x.clone());
                }
            }
        }
        LabelSet::from_elems(acc.into_iter().collect())
            .map(VertexLabel::Set)
            .map_err(|_| malformed())
    }
}

pub fn s_object(g: &Graph) -> Graph {
    Triangle::object(g)
}

pub fn s_morphism(f: &Hom) -> Result<Hom, MonadError> {
    monad::apply_morphism::<Triangle>(f)
}

pub fn eta_s(g: &Arc<Graph>) -> Hom {
    monad::unit::<Triangle>(g).expect("the unit of S is a homomorphism")
}

pub fn mu_s(g: &Graph) -> Hom {
    monad::mult::<Triangle>(g).expect("the multiplication of S is a homomorphism")
}

pub fn check_monad_laws_s(g: &Arc<Graph>) -> LawReport {
    monad::check_monad_laws::<Triangle>(g).expect("S's structure maps are homomorphisms")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PstsViolation {
    UnknownPoint(VertexLabel),
    DegenerateTriple(Vec<VertexLabel>),
    /// A pair of points lying in two different triples.
    PairInTwoTriples {
        pair: (VertexLabel, VertexLabel),
        first: [VertexLabel; 3],
        second: [VertexLabel; 3],
    },
}

impl fmt::Display for PstsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |x: &[VertexLabel; 3]| format!("{{{}, {}, {}}}", x[0], x[1], x[2]);
        match self {
            PstsViolation::UnknownPoint(p) => write!(f, "{p} is not a point"),
            PstsViolation::DegenerateTriple(ps) => {
                let names: Vec<_> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}] is not a set of 3 distinct points", names.join(", "))
            }
            PstsViolation::PairInTwoTriples { pair, first, second } => write!(
                f,
                "pair {{{}, {}}} lies in {} and {}",
                pair.0,
                pair.1,
                t(first),
                t(second)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error("not a partial Steiner triple system: {0}")]
    Invalid(Box<PstsViolation>),
    #[error("not an S-algebra: {0}")]
    NotAnAlgebra(AlgebraWitness),
    #[error("edge {{{0}, {1}}} lies in no triple")]
    UncoveredEdge(VertexLabel, VertexLabel),
    #[error("map is not defined on point {0}")]
    MapNotTotal(VertexLabel),
    #[error("graph has {order} vertices, above the enumeration cap of {cap}")]
    SearchSpaceTooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A finite partial Steiner triple system. Points are in canonical order;
/// each triple is an increasing index triple and the list is sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Psts {
    points: Vec<VertexLabel>,
    triples: Vec<[usize; 3]>,
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Checks points exist, triples are 3-sets and each pair is covered at most
/// once. Triples are given by label.
pub fn is_psts(points: &[VertexLabel], triples: &[Vec<VertexLabel>]) -> Verdict<PstsViolation> {
    match build_psts(points, triples) {
        Ok(_) => Verdict::Holds,
        Err(v) => Verdict::Fails(*v),
    }
}

fn build_psts(points: &[VertexLabel], triples: &[Vec<VertexLabel>]) -> Result<Psts, Box<PstsViolation>> {
    let points: Vec<VertexLabel> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut idx = BTreeSet::new();
    for t in triples {
        let mut ks = Vec::with_capacity(3);
        for p in t {
            ks.push(
                points
                    .binary_search(p)
                    .map_err(|_| Box::new(PstsViolation::UnknownPoint(p.clone())))?,
            );
        }
        ks.sort_unstable();
        ks.dedup();
        if ks.len() != 3 || t.len() != 3 {
            return Err(Box::new(PstsViolation::DegenerateTriple(t.clone())));
        }
        idx.insert([ks[0], ks[1], ks[2]]);
    }
    let psts = Psts {
        points,
        triples: idx.into_iter().collect(),
    };
    match psts.first_double_cover() {
        None => Ok(psts),
        Some(v) => Err(Box::new(v)),
    }
}

impl Psts {
    pub fn new(points: &[VertexLabel], triples: &[Vec<VertexLabel>]) -> Result<Psts, SteinerError> {
        build_psts(points, triples).map_err(SteinerError::Invalid)
    }

    /// From sorted unique points and index triples in any order.
    pub(crate) fn from_indices(
        points: Vec<VertexLabel>,
        triples: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Psts, Box<PstsViolation>> {
        let triples: BTreeSet<[usize; 3]> = triples.into_iter().map(sorted3).collect();
        let psts = Psts {
            points,
            triples: triples.into_iter().collect(),
        };
        match psts.first_double_cover() {
            None => Ok(psts),
            Some(v) => Err(Box::new(v)),
        }
    }

    fn first_double_cover(&self) -> Option<PstsViolation> {
        let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (n, t) in self.triples.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if let Some(&m) = owner.get(&(a, b)) {
                    return Some(PstsViolation::PairInTwoTriples {
                        pair: (self.points[a].clone(), self.points[b].clone()),
                        first: self.triple_labels(m),
                        second: self.triple_labels(n),
                    });
                }
                owner.insert((a, b), n);
            }
        }
        None
    }

    pub fn points(&self) -> &[VertexLabel] {
        &self.points
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn triple_labels(&self, n: usize) -> [VertexLabel; 3] {
        self.triples[n].map(|k| self.points[k].clone())
    }

    pub fn index_of(&self, p: &VertexLabel) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// The point completing the pair `{a, b}` to a triple, if the pair is covered.
    pub fn third_point(&self, a: usize, b: usize) -> Option<usize> {
        self.triples.iter().find_map(|t| {
            if t.contains(&a) && t.contains(&b) && a != b {
                t.iter().copied().find(|&c| c != a && c != b)
            } else {
                None
            }
        })
    }

    /// Every pair of distinct points lies in exactly one triple.
    pub fn is_complete(&self) -> bool {
        let n = self.points.len();
        3 * self.triples.len() == n * n.saturating_sub(1) / 2
    }

    /// The graph joining exactly the pairs covered by some triple.
    pub fn support_graph(&self) -> Graph {
        let edges = self
            .triples
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
        Graph::from_sorted(self.points.clone(), edges)
    }

    /// One palette color per triple, on the support graph's edges.
    pub fn decorations(&self) -> Decorations {
        let mut colors = BTreeMap::new();
        for (n, t) in self.triples.iter().enumerate() {
            for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                colors.insert(e, n);
            }
        }
        Decorations {
            colors,
            ..Decorations::default()
        }
    }

    pub fn to_json(&self) -> PstsJson {
        PstsJson {
            points: self.points.iter().map(|p| p.to_string()).collect(),
            triples: (0..self.triples.len())
                .map(|n| self.triple_labels(n).iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }
}

impl fmt::Debug for Psts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Psts {{ {} points, triples [", self.points.len())?;
        for n in 0..self.triples.len() {
            let [a, b, c] = self.triple_labels(n);
            write!(f, "{}{a}{b}{c}", if n > 0 { " " } else { "" })?;
        }
        write!(f, "] }}")
    }
}

pub fn is_complete_sts(p: &Psts) -> bool {
    p.is_complete()
}

pub fn support_graph(p: &Psts) -> Graph {
    p.support_graph()
}

/// `{"points": [...], "triples": [[t, t, t], ...]}`, triples sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PstsJson {
    pub points: Vec<String>,
    pub triples: Vec<Vec<String>>,
}

impl PstsJson {
    /// Parses labels; structural validity is left to [`is_psts`] / [`Psts::new`].
    pub fn labels(&self) -> Result<(Vec<VertexLabel>, Vec<Vec<VertexLabel>>), LabelError> {
        let points = self.points.iter().map(|p| p.parse()).collect::<Result<_, _>>()?;
        let triples = self
            .triples
            .iter()
            .map(|t| t.iter().map(|p| p.parse()).collect())
            .collect::<Result<_, _>>()?;
        Ok((points, triples))
    }

    pub fn to_psts(&self) -> Result<Psts, SteinerError> {
        let (points, triples) = self.labels()?;
        Psts::new(&points, &triples)
    }
}

/// First triple of `p` whose image under the index map is not a triple of `q`.
pub fn psts_morphism_failure(map: &[usize], p: &Psts, q: &Psts) -> Option<usize> {
    p.triples
        .iter()
        .position(|t| q.triples.binary_search(&sorted3(t.map(|k| map[k]))).is_err())
}

/// Whether a label map sends every triple of `p` onto a triple of `q`;
/// on failure reports the first offending triple.
pub fn is_psts_morphism(
    map: &BTreeMap<VertexLabel, VertexLabel>,
    p: &Psts,
    q: &Psts,
) -> Result<Verdict<[VertexLabel; 3]>, SteinerError> {
    let mut idx = Vec::with_capacity(p.points.len());
    for x in &p.points {
        let image = map.get(x).ok_or_else(|| SteinerError::MapNotTotal(x.clone()))?;
        idx.push(q.index_of(image).ok_or_else(|| {
            SteinerError::Category(CategoryError::ImageOutsideTarget {
                vertex: x.clone(),
                image: image.clone(),
            })
        })?);
    }
    Ok(match psts_morphism_failure(&idx, p, q) {
        None => Verdict::Holds,
        Some(n) => Verdict::Fails(p.triple_labels(n)),
    })
}

/// Every PSTS morphism `p -> q` as an index map, lexicographic. Triples are
/// checked as soon as all three points are assigned.
pub fn enumerate_psts_morphisms(p: &Psts, q: &Psts) -> Vec<Vec<usize>> {
    // Triples indexed by their largest point, so each is checked once.
    let mut closing: Vec<Vec<[usize; 3]>> = vec![Vec::new(); p.points.len()];
    for t in &p.triples {
        closing[t[2]].push(*t);
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(p.points.len());
    fn go(q: &Psts, closing: &[Vec<[usize; 3]>], map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = map.len();
        if i == closing.len() {
            out.push(map.clone());
            return;
        }
        for k in 0..q.points.len() {
            map.push(k);
            let ok = closing[i]
                .iter()
                .all(|t| q.triples.binary_search(&sorted3(t.map(|x| map[x]))).is_ok());
            if ok {
                go(q, closing, map, out);
            }
            map.pop();
        }
    }
    go(q, &closing, &mut map, &mut out);
    out
}

/// An algebra for [`Triangle`]: a structure map `α: S(G) -> G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SAlgebra {
    alpha: Hom,
}

impl SAlgebra {
    pub fn new(alpha: Hom) -> Result<SAlgebra, SteinerError> {
        match is_s_algebra(&alpha)? {
            Verdict::Holds => Ok(SAlgebra { alpha }),
            Verdict::Fails(w) => Err(SteinerError::NotAnAlgebra(w)),
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.alpha.dst()
    }

    pub fn structure_map(&self) -> &Hom {
        &self.alpha
    }
}

pub fn is_s_algebra(alpha: &Hom) -> Result<Verdict<AlgebraWitness>, MonadError> {
    monad::is_algebra::<Triangle>(alpha)
}

pub fn is_s_algebra_morphism(
    h: &Hom,
    a: &SAlgebra,
    b: &SAlgebra,
) -> Result<Verdict<DiagramWitness>, MonadError> {
    monad::is_algebra_morphism::<Triangle>(h, &a.alpha, &b.alpha)
}

/// Points `V(G)`, triples `{u, v, α({u,v})}` over the edges of `G`.
pub fn algebra_to_psts(alg: &SAlgebra) -> Psts {
    let g = alg.graph();
    let alpha = &alg.alpha;
    let triples: Vec<[usize; 3]> = g
        .edges()
        .iter()
        .map(|&(i, j)| {
            let e = VertexLabel::pair_set(g.label(i).clone(), g.label(j).clone()).expect("edge");
            let w = g
                .index_of(alpha.apply(&e).expect("edge vertex of S(G)"))
                .expect("image in G");
            [i, j, w]
        })
        .collect();
    Psts::from_indices(g.vertices().to_vec(), triples)
        .expect("the square law makes the triples a partial Steiner system")
}

/// Graph is the support graph; `α({u}) = u` and `α({u,v})` completes the
/// pair to its unique triple.
pub fn psts_to_algebra(p: &Psts) -> Result<SAlgebra, SteinerError> {
    let g = Arc::new(p.support_graph());
    let sg = Arc::new(s_object(&g));
    let mut third: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &p.triples {
        third.insert((t[0], t[1]), t[2]);
        third.insert((t[0], t[2]), t[1]);
        third.insert((t[1], t[2]), t[0]);
    }
    let mut map = Vec::with_capacity(sg.order());
    for v in sg.vertices() {
        let elems = v.as_set().expect("vertices of S(G) are sets").elems();
        let ks: Vec<usize> = elems.iter().map(|x| g.index_of(x).expect("in G")).collect();
        map.push(match ks[..] {
            [u] => u,
            [u, w] => *third
                .get(&pair_key(u, w))
                .ok_or_else(|| SteinerError::UncoveredEdge(g.label(u).clone(), g.label(w).clone()))?,
            _ => unreachable!("set labels have one or two elements"),
        });
    }
    Ok(SAlgebra {
        alpha: Hom::new(sg, g, map)?,
    })
}

/// Product in PSTS, computed through the algebras:
/// `{(a1,b1), (a2,b2)}` with `a1 ~ a2`, `b1 ~ b2` is completed by
/// `(α({a1,a2}), β({b1,b2}))`.
pub fn product_psts(p: &Psts, q: &Psts) -> Psts {
    let nq = q.points.len();
    let points: Vec<VertexLabel> = p
        .points
        .iter()
        .flat_map(|a| {
            q.points
                .iter()
                .map(move |b| VertexLabel::pair(a.clone(), b.clone()))
        })
        .collect();
    let (ga, gb) = (p.support_graph(), q.support_graph());
    let mut triples = Vec::new();
    for &(a1, a2) in ga.edges() {
        let a3 = p.third_point(a1, a2).expect("support edge is covered");
        for &(b1, b2) in gb.edges() {
            let b3 = q.third_point(b1, b2).expect("support edge is covered");
            // Both orientations of the product edge over (a1a2, b1b2).
            triples.push([a1 * nq + b1, a2 * nq + b2, a3 * nq + b3]);
            triples.push([a1 * nq + b2, a2 * nq + b1, a3 * nq + b3]);
        }
    }
    Psts::from_indices(points, triples).expect("product of partial Steiner systems")
}

/// Projections out of [`product_psts`]`(p, q)` as index maps.
pub fn product_projections(p: &Psts, q: &Psts) -> (Vec<usize>, Vec<usize>) {
    let nq = q.points.len();
    let n = p.points.len() * nq;
    ((0..n).map(|k| k / nq).collect(), (0..n).map(|k| k % nq).collect())
}

/// Every partial Steiner system whose support graph is exactly `g`: each
/// uncovered edge in turn is completed to a triangle of `g` none of whose
/// sides is covered yet.
pub fn enumerate_psts_on(g: &Graph, cap: usize) -> Result<Vec<Psts>, SteinerError> {
    if g.order() > cap {
        return Err(SteinerError::SearchSpaceTooLarge {
            order: g.order(),
            cap,
        });
    }
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    psts_search(g, &mut covered, &mut chosen, &mut out);
    let mut systems: Vec<Psts> = out
        .into_iter()
        .map(|ts| Psts::from_indices(g.vertices().to_vec(), ts).expect("disjoint pair covers"))
        .collect();
    systems.sort();
    Ok(systems)
}

fn psts_search(
    g: &Graph,
    covered: &mut BTreeSet<(usize, usize)>,
    chosen: &mut Vec<[usize; 3]>,
    out: &mut Vec<Vec<[usize; 3]>>,
) {
    let Some(&(u, v)) = g.edges().iter().find(|e| !covered.contains(e)) else {
        out.push(chosen.clone());
        return;
    };
    for &w in g.neighbors(u) {
        if w == v || !g.adjacent(v, w) {
            continue;
        }
        let (uw, vw) = (pair_key(u, w), pair_key(v, w));
        if covered.contains(&uw) || covered.contains(&vw) {
            continue;
        }
        for e in [(u, v), uw, vw] {
            covered.insert(e);
        }
        chosen.push(sorted3([u, v, w]));
        psts_search(g, covered, chosen, out);
        chosen.pop();
        for e in [(u, v), uw, vw] {
            covered.remove(&e);
        }
    }
}

/// Every `S`-algebra on `g`, found by searching structure maps directly
/// (independently of [`enumerate_psts_on`]).
pub fn enumerate_s_algebras(g: &Arc<Graph>, cap: usize) -> Result<Vec<SAlgebra>, SteinerError> {
    if g.order() > cap {
        return Err(SteinerError::SearchSpaceTooLarge {
            order: g.order(),
            cap,
        });
    }
    Ok(monad::enumerate_algebras::<Triangle>(g)?
        .into_iter()
        .map(|alpha| SAlgebra { alpha })
        .collect())
}
