//! Monads on the category of graphs, checked pointwise.
//!
//! A [`GraphMonad`] describes its functor, unit and multiplication one vertex
//! label at a time. Everything else here (functor action on homomorphisms,
//! the monad laws, algebra and algebra-morphism checks, and the exhaustive
//! search for algebras) is generic over that description.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{compose, diagram_commutes, CategoryError, DiagramWitness, Hom, Verdict};
use crate::graph::Graph;
use crate::label::VertexLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("{0} does not have the nesting the monad expects")]
    MalformedNestedLabel(VertexLabel),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

pub trait GraphMonad {
    const NAME: &'static str;

    /// The functor on objects.
    fn object(g: &Graph) -> Graph;

    /// The functor on a single vertex of `M(src)`, given the underlying
    /// vertex map. Returns `None` when the map is undefined somewhere it is
    /// needed or the image would not be a well-formed label.
    fn map_vertex(
        v: &VertexLabel,
        f: &mut dyn FnMut(&VertexLabel) -> Option<VertexLabel>,
    ) -> Option<VertexLabel>;

    fn unit_vertex(v: &VertexLabel) -> VertexLabel;

    /// The multiplication on a vertex of `M(M(G))`.
    fn mult_vertex(v: &VertexLabel) -> Result<VertexLabel, MonadError>;
}

fn hom_by<F>(src: &Arc<Graph>, dst: &Arc<Graph>, mut f: F) -> Result<Hom, MonadError>
where
    F: FnMut(&VertexLabel) -> Result<VertexLabel, MonadError>,
{
    let mut map = Vec::with_capacity(src.order());
    for v in src.vertices() {
        let image = f(v)?;
        let k = dst
            .index_of(&image)
            .ok_or_else(|| CategoryError::ImageOutsideTarget {
                vertex: v.clone(),
                image,
            })?;
        map.push(k);
    }
    Ok(Hom::new(src.clone(), dst.clone(), map)?)
}

pub fn apply_object<M: GraphMonad>(g: &Graph) -> Arc<Graph> {
    Arc::new(M::object(g))
}

/// `M(f)` with explicitly supplied `M(src f)` and `M(dst f)`, so callers
/// can share functor images across many maps.
pub fn apply_morphism_between<M: GraphMonad>(
    f: &Hom,
    image_src: &Arc<Graph>,
    image_dst: &Arc<Graph>,
) -> Result<Hom, MonadError> {
    hom_by(image_src, image_dst, |v| {
        M::map_vertex(v, &mut |x| f.apply(x).cloned())
            .ok_or_else(|| MonadError::MalformedNestedLabel(v.clone()))
    })
}

pub fn apply_morphism<M: GraphMonad>(f: &Hom) -> Result<Hom, MonadError> {
    apply_morphism_between::<M>(f, &apply_object::<M>(f.src()), &apply_object::<M>(f.dst()))
}

/// `η_G: G -> image`, where `image = M(G)`.
pub fn unit_into<M: GraphMonad>(g: &Arc<Graph>, image: &Arc<Graph>) -> Result<Hom, MonadError> {
    hom_by(g, image, |v| Ok(M::unit_vertex(v)))
}

/// `μ_G: M(M(G)) -> M(G)`, given both graphs.
pub fn mult_between<M: GraphMonad>(twice: &Arc<Graph>, once: &Arc<Graph>) -> Result<Hom, MonadError> {
    hom_by(twice, once, M::mult_vertex)
}

pub fn unit<M: GraphMonad>(g: &Arc<Graph>) -> Result<Hom, MonadError> {
    unit_into::<M>(g, &apply_object::<M>(g))
}

pub fn mult<M: GraphMonad>(g: &Graph) -> Result<Hom, MonadError> {
    let once = apply_object::<M>(g);
    let twice = apply_object::<M>(&once);
    mult_between::<M>(&twice, &once)
}

/// `G, M(G), M²(G), ...` built once and shared.
pub struct Tower<M> {
    levels: Vec<Arc<Graph>>,
    _monad: PhantomData<M>,
}

impl<M: GraphMonad> Tower<M> {
    pub fn new(g: Arc<Graph>, height: usize) -> Tower<M> {
        let mut levels = vec![g];
        for _ in 0..height {
            let next = apply_object::<M>(levels.last().expect("nonempty"));
            levels.push(next);
        }
        Tower {
            levels,
            _monad: PhantomData,
        }
    }

    /// `M^k(G)`.
    pub fn level(&self, k: usize) -> &Arc<Graph> {
        &self.levels[k]
    }

    /// `η_{M^k(G)}`.
    pub fn unit(&self, k: usize) -> Result<Hom, MonadError> {
        unit_into::<M>(&self.levels[k], &self.levels[k + 1])
    }

    /// `μ_{M^k(G)}`.
    pub fn mult(&self, k: usize) -> Result<Hom, MonadError> {
        mult_between::<M>(&self.levels[k + 2], &self.levels[k + 1])
    }

    /// `M` applied to a map between levels `k` and `j`.
    pub fn lift(&self, f: &Hom, k: usize, j: usize) -> Result<Hom, MonadError> {
        apply_morphism_between::<M>(f, &self.levels[k + 1], &self.levels[j + 1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonadLaw {
    /// `μ ∘ M(η) = id`
    LeftUnit,
    /// `μ ∘ η_M = id`
    RightUnit,
    /// `μ ∘ μ_M = μ ∘ M(μ)`
    Associativity,
}

impl fmt::Display for MonadLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonadLaw::LeftUnit => "mu . M(eta) = id",
            MonadLaw::RightUnit => "mu . eta_M = id",
            MonadLaw::Associativity => "mu . mu_M = mu . M(mu)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub monad: &'static str,
    pub results: Vec<(MonadLaw, Verdict<DiagramWitness>)>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|(_, v)| v.holds())
    }

    pub fn first_failure(&self) -> Option<(MonadLaw, &DiagramWitness)> {
        self.results
            .iter()
            .find_map(|(law, v)| v.witness().map(|w| (*law, w)))
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (law, verdict) in &self.results {
            match verdict {
                Verdict::Holds => writeln!(f, "{}: {law}: ok", self.monad)?,
                Verdict::Fails(w) => writeln!(f, "{}: {law}: FAILS, {w}", self.monad)?,
            }
        }
        Ok(())
    }
}

/// Both unit triangles pointwise on `M(G)`, associativity pointwise on `M³(G)`.
pub fn check_monad_laws<M: GraphMonad>(g: &Arc<Graph>) -> Result<LawReport, MonadError> {
    let tower = Tower::<M>::new(g.clone(), 3);
    let mu = tower.mult(0)?;
    let id = Hom::identity(tower.level(1).clone());

    let lifted_eta = tower.lift(&tower.unit(0)?, 0, 1)?;
    let left = compose(&mu, &lifted_eta)?;
    let right = compose(&mu, &tower.unit(1)?)?;

    let mu_outer = compose(&mu, &tower.mult(1)?)?;
    let mu_inner = compose(&mu, &tower.lift(&mu, 2, 1)?)?;

    let results = vec![
        (MonadLaw::LeftUnit, diagram_commutes(&[(left, id.clone())])?),
        (MonadLaw::RightUnit, diagram_commutes(&[(right, id)])?),
        (
            MonadLaw::Associativity,
            diagram_commutes(&[(mu_outer, mu_inner)])?,
        ),
    ];
    Ok(LawReport {
        monad: M::NAME,
        results,
    })
}

/// Functor laws for a composable pair: `M(id) = id` on `f`'s source and
/// `M(g ∘ f) = M(g) ∘ M(f)`.
pub fn check_functor_laws<M: GraphMonad>(f: &Hom, g: &Hom) -> Result<Verdict<DiagramWitness>, MonadError> {
    let ma = apply_object::<M>(f.src());
    let mb = apply_object::<M>(f.dst());
    let mc = apply_object::<M>(g.dst());
    let lifted_id = apply_morphism_between::<M>(&Hom::identity(f.src().clone()), &ma, &ma)?;
    let gf = compose(g, f)?;
    let lifted_gf = apply_morphism_between::<M>(&gf, &ma, &mc)?;
    let composite = compose(
        &apply_morphism_between::<M>(g, &mb, &mc)?,
        &apply_morphism_between::<M>(f, &ma, &mb)?,
    )?;
    Ok(diagram_commutes(&[
        (lifted_id, Hom::identity(ma.clone())),
        (lifted_gf, composite),
    ])?)
}

/// Naturality squares of `η` and `μ` at `f: A -> B`.
pub fn check_naturality<M: GraphMonad>(f: &Hom) -> Result<Verdict<DiagramWitness>, MonadError> {
    let ta = Tower::<M>::new(f.src().clone(), 2);
    let tb = Tower::<M>::new(f.dst().clone(), 2);
    let mf = apply_morphism_between::<M>(f, ta.level(1), tb.level(1))?;
    let mmf = apply_morphism_between::<M>(&mf, ta.level(2), tb.level(2))?;
    let eta_square = (compose(&tb.unit(0)?, f)?, compose(&mf, &ta.unit(0)?)?);
    let mu_square = (compose(&tb.mult(0)?, &mmf)?, compose(&mf, &ta.mult(0)?)?);
    Ok(diagram_commutes(&[eta_square, mu_square])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraLaw {
    /// `α ∘ η = id`
    Unit,
    /// `α ∘ M(α) = α ∘ μ`
    Square,
}

impl fmt::Display for AlgebraLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraLaw::Unit => "alpha . eta = id",
            AlgebraLaw::Square => "alpha . M(alpha) = alpha . mu",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraWitness {
    pub law: AlgebraLaw,
    pub detail: DiagramWitness,
}

impl fmt::Display for AlgebraWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: at {}, {} vs {}",
            self.law, self.detail.vertex, self.detail.left, self.detail.right
        )
    }
}

fn check_structure_map<M: GraphMonad>(
    alpha: &Hom,
    tower: &Tower<M>,
) -> Result<Verdict<AlgebraWitness>, MonadError> {
    let id = Hom::identity(tower.level(0).clone());
    let unit = diagram_commutes(&[(compose(alpha, &tower.unit(0)?)?, id)])?;
    if let Verdict::Fails(detail) = unit {
        return Ok(Verdict::Fails(AlgebraWitness {
            law: AlgebraLaw::Unit,
            detail,
        }));
    }
    let lifted = tower.lift(alpha, 1, 0)?;
    let square = diagram_commutes(&[(compose(alpha, &lifted)?, compose(alpha, &tower.mult(0)?)?)])?;
    Ok(square.map(|detail| AlgebraWitness {
        law: AlgebraLaw::Square,
        detail,
    }))
}

/// Checks that `alpha: M(A) -> A` satisfies the unit and square laws.
pub fn is_algebra<M: GraphMonad>(alpha: &Hom) -> Result<Verdict<AlgebraWitness>, MonadError> {
    let a = alpha.dst().clone();
    let tower = Tower::<M>::new(a, 2);
    if **alpha.src() != **tower.level(1) {
        return Err(
            CategoryError::DomainMismatch(format!("structure map source is not {}(A)", M::NAME)).into(),
        );
    }
    check_structure_map(alpha, &tower)
}

/// `h ∘ α₁ = α₂ ∘ M(h)` for `h: A₁ -> A₂`.
pub fn is_algebra_morphism<M: GraphMonad>(
    h: &Hom,
    alpha1: &Hom,
    alpha2: &Hom,
) -> Result<Verdict<DiagramWitness>, MonadError> {
    let lifted = apply_morphism_between::<M>(h, alpha1.src(), alpha2.src())?;
    Ok(diagram_commutes(&[(
        compose(h, alpha1)?,
        compose(alpha2, &lifted)?,
    )])?)
}

/// Every algebra structure `α: M(G) -> G`, in lexicographic order of the map.
///
/// The unit law pins `α` on the image of `η`. Every other vertex of `M(G)`
/// tries every vertex of `G` in turn; a partial assignment is abandoned as
/// soon as an edge is broken or an instance of the square law that is
/// already fully determined disagrees. Survivors are re-checked with
/// [`is_algebra`].
pub fn enumerate_algebras<M: GraphMonad>(g: &Arc<Graph>) -> Result<Vec<Hom>, MonadError> {
    let tower = Tower::<M>::new(g.clone(), 2);
    let once = tower.level(1);
    let twice = tower.level(2);
    let mu = tower.mult(0)?;
    let eta = tower.unit(0)?;

    let mut assignment: Vec<Option<usize>> = vec![None; once.order()];
    for (x, &k) in eta.indices().iter().enumerate() {
        assignment[k] = Some(x);
    }
    let free: Vec<usize> = (0..once.order()).filter(|&k| assignment[k].is_none()).collect();

    // For each vertex of M²(G): the M(G)-vertices M(α) needs there, and μ of it.
    let squares: Vec<SquareInstance> = twice
        .vertices()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut deps = Vec::new();
            M::map_vertex(v, &mut |x| {
                deps.push(once.index_of(x).expect("element of M²(G) is a vertex of M(G)"));
                Some(x.clone())
            });
            SquareInstance {
                vertex: v.clone(),
                deps,
                mu: mu.apply_index(k),
            }
        })
        .collect();

    let mut touching = vec![Vec::new(); once.order()];
    for (i, sq) in squares.iter().enumerate() {
        let mut keys = sq.deps.clone();
        keys.push(sq.mu);
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            touching[k].push(i);
        }
    }

    let mut search = AlgebraSearch::<M> {
        base: g,
        once,
        squares: &squares,
        touching: &touching,
        free: &free,
        assignment,
        watch: vec![Vec::new(); once.order()],
        found: Vec::new(),
        _monad: PhantomData,
    };
    let mut watched = Vec::new();
    let all: Vec<usize> = (0..squares.len()).collect();
    if search.check(&all, &mut watched) {
        search.run(0);
    }
    let found = search.found;

    let mut out = Vec::with_capacity(found.len());
    for map in found {
        let alpha = Hom::new(once.clone(), g.clone(), map)?;
        if check_structure_map(&alpha, &tower)?.holds() {
            out.push(alpha);
        }
    }
    Ok(out)
}

struct SquareInstance {
    vertex: VertexLabel,
    deps: Vec<usize>,
    mu: usize,
}

struct AlgebraSearch<'a, M> {
    base: &'a Graph,
    once: &'a Graph,
    squares: &'a [SquareInstance],
    /// Square instances whose deps or μ-target include the vertex.
    touching: &'a [Vec<usize>],
    free: &'a [usize],
    assignment: Vec<Option<usize>>,
    /// Square instances waiting for the vertex M(α) sends them to, with the
    /// value each one forces there.
    watch: Vec<Vec<(usize, usize)>>,
    found: Vec<Vec<usize>>,
    _monad: PhantomData<M>,
}

enum SquareState {
    Open,
    Agrees,
    Fails,
    Waiting { at: usize, forced: usize },
}

impl<M: GraphMonad> AlgebraSearch<'_, M> {
    fn run(&mut self, depth: usize) {
        if depth == self.free.len() {
            let map = self
                .assignment
                .iter()
                .map(|x| x.expect("complete assignment"))
                .collect();
            self.found.push(map);
            return;
        }
        let y = self.free[depth];
        let values = match self.watch[y].first() {
            Some(&(_, forced)) => forced..forced + 1,
            None => 0..self.base.order(),
        };
        for value in values {
            let edges_ok = self.once.neighbors(y).iter().all(|&z| match self.assignment[z] {
                Some(vz) => self.base.adjacent(value, vz),
                None => true,
            });
            if !edges_ok {
                continue;
            }
            self.assignment[y] = Some(value);
            let mut watched = Vec::new();
            let touching = self.touching;
            if self.check(&touching[y], &mut watched) {
                self.run(depth + 1);
            }
            for k in watched {
                self.watch[k].pop();
            }
            self.assignment[y] = None;
        }
    }

    /// False if one of `ids` is decided and fails. Instances that only lack
    /// the value at their inner vertex are parked on its watch list; two of
    /// them forcing different values there also fail.
    fn check(&mut self, ids: &[usize], watched: &mut Vec<usize>) -> bool {
        for &i in ids {
            match self.state(&self.squares[i]) {
                SquareState::Fails => return false,
                SquareState::Waiting { at, forced } => {
                    let clash = self.watch[at].first().is_some_and(|&(_, f)| f != forced);
                    self.watch[at].push((i, forced));
                    watched.push(at);
                    if clash {
                        return false;
                    }
                }
                SquareState::Open | SquareState::Agrees => {}
            }
        }
        true
    }

    fn state(&self, sq: &SquareInstance) -> SquareState {
        let Some(rhs) = self.assignment[sq.mu] else {
            return SquareState::Open;
        };
        if sq.deps.iter().any(|&d| self.assignment[d].is_none()) {
            return SquareState::Open;
        }
        let inner = M::map_vertex(&sq.vertex, &mut |x| {
            let k = self.once.index_of(x)?;
            self.assignment[k].map(|b| self.base.label(b).clone())
        });
        let Some(k) = inner.and_then(|v| self.once.index_of(&v)) else {
            return SquareState::Fails;
        };
        match self.assignment[k] {
            Some(lhs) if lhs == rhs => SquareState::Agrees,
            Some(_) => SquareState::Fails,
            None => SquareState::Waiting { at: k, forced: rhs },
        }
    }
}
