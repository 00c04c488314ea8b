use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use graph_monads::category::{CategoryError, Hom, Verdict};
use graph_monads::family::labeled_graphs;
use graph_monads::graph::Graph;
use graph_monads::io::{serialize_edge_list, to_dot, Decorations};
use graph_monads::label::VertexLabel;
use graph_monads::matching::{
    algebra_to_matching, check_matching, check_monad_laws_t, enumerate_matchings, enumerate_t_algebras,
    matching_to_algebra, product_perf, t_object, MatchingError, PerfectMatching, TAlgebra,
    DEFAULT_MATCHING_CAP,
};
use graph_monads::monad::LawReport;
use graph_monads::steiner::{
    algebra_to_psts, check_monad_laws_s, enumerate_psts_on, enumerate_s_algebras, is_psts, product_psts,
    psts_to_algebra, s_object, Psts, SAlgebra, SteinerError, DEFAULT_STEINER_CAP,
};

use crate::load::{self, AlgebraJson, LoadError, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub report: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    /// Primary text output: written to `--out` or printed.
    #[serde(skip)]
    pub artifact: Option<String>,
}

impl CommandResult {
    fn ok(report: impl Into<String>) -> CommandResult {
        CommandResult {
            status: Status::Ok,
            report: report.into(),
            payload: None,
            artifact: None,
        }
    }

    fn violation(report: impl Into<String>) -> CommandResult {
        CommandResult {
            status: Status::Violation,
            ..CommandResult::ok(report)
        }
    }

    pub fn error(report: impl Display) -> CommandResult {
        CommandResult {
            status: Status::Error,
            ..CommandResult::ok(format!("error: {report}"))
        }
    }

    fn with_payload(mut self, payload: Value) -> CommandResult {
        self.payload = Some(payload);
        self
    }

    /// Payload that is also the primary output, pretty-printed.
    fn with_document(self, payload: Value) -> CommandResult {
        let text = pretty(&payload);
        self.with_payload(payload).with_artifact(text)
    }

    fn with_artifact(mut self, text: String) -> CommandResult {
        self.artifact = Some(text);
        self
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Early return for input errors.
pub type Attempt = Result<CommandResult, CommandResult>;

impl From<LoadError> for CommandResult {
    fn from(e: LoadError) -> CommandResult {
        CommandResult::error(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MonadKind {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "S", alias = "s")]
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ListKind {
    Matchings,
    Psts,
    #[value(name = "algebras-T", alias = "algebras-t")]
    AlgebrasT,
    #[value(name = "algebras-S", alias = "algebras-s")]
    AlgebrasS,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProductKind {
    Perf,
    Psts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Direction {
    MatchingToAlgebra,
    AlgebraToMatching,
    PstsToAlgebra,
    AlgebraToPsts,
}

pub fn check_matching_cmd(graph: &Path, matching: &Path) -> Attempt {
    let g = load::graph(graph)?;
    let (_, map) = load::matching(matching, Some(g.clone()))?;
    Ok(match check_matching(&g, &map) {
        Verdict::Holds => CommandResult::ok(format!("perfect matching: {} pairs", g.order() / 2)),
        Verdict::Fails(w) => CommandResult::violation(format!("not a perfect matching: {w}")),
    })
}

pub fn check_psts_cmd(file: &Path) -> Attempt {
    let (points, triples) = load::psts(file)?;
    Ok(match is_psts(&points, &triples) {
        Verdict::Holds => {
            let p = Psts::new(&points, &triples).expect("validated");
            let kind = if p.is_complete() {
                "complete Steiner triple system"
            } else {
                "partial Steiner triple system"
            };
            CommandResult::ok(format!(
                "{kind}: {} points, {} triples",
                points.len(),
                triples.len()
            ))
        }
        Verdict::Fails(w) => CommandResult::violation(format!("not a partial Steiner triple system: {w}")),
    })
}

fn matching_error(e: MatchingError) -> CommandResult {
    match e {
        MatchingError::InvalidMatching(_)
        | MatchingError::NotAnAlgebra(_)
        | MatchingError::NotEquivariant { .. } => CommandResult::violation(e.to_string()),
        _ => CommandResult::error(e),
    }
}

fn steiner_error(e: SteinerError) -> CommandResult {
    match e {
        SteinerError::Invalid(_)
        | SteinerError::NotAnAlgebra(_)
        | SteinerError::UncoveredEdge(..)
        | SteinerError::Category(CategoryError::NotAHomomorphism(..)) => {
            CommandResult::violation(e.to_string())
        }
        _ => CommandResult::error(e),
    }
}

fn category_error(e: CategoryError) -> CommandResult {
    match e {
        CategoryError::NotAHomomorphism(..) => CommandResult::violation(e.to_string()),
        _ => CommandResult::error(e),
    }
}

pub fn list_cmd(kind: ListKind, graph: &Path, cap: Option<usize>) -> Attempt {
    let g = load::graph(graph)?;
    let items: Vec<Value> = match kind {
        ListKind::Matchings => enumerate_matchings(&g, cap.unwrap_or(DEFAULT_MATCHING_CAP))
            .map_err(CommandResult::error)?
            .iter()
            .map(|m| to_value(&m.to_json().matching))
            .collect(),
        ListKind::AlgebrasT => enumerate_t_algebras(&g, cap.unwrap_or(DEFAULT_MATCHING_CAP))
            .map_err(CommandResult::error)?
            .iter()
            .map(|a| to_value(&a.structure_map().to_json().map))
            .collect(),
        ListKind::Psts => enumerate_psts_on(&g, cap.unwrap_or(DEFAULT_STEINER_CAP))
            .map_err(CommandResult::error)?
            .iter()
            .map(|p| to_value(&p.to_json()))
            .collect(),
        ListKind::AlgebrasS => enumerate_s_algebras(&g, cap.unwrap_or(DEFAULT_STEINER_CAP))
            .map_err(CommandResult::error)?
            .iter()
            .map(|a| to_value(&a.structure_map().to_json().map))
            .collect(),
    };
    Ok(CommandResult::ok(format!("count: {}", items.len())).with_document(Value::Array(items)))
}

fn law_report(monad: MonadKind, g: &Arc<Graph>) -> LawReport {
    match monad {
        MonadKind::T => check_monad_laws_t(g),
        MonadKind::S => check_monad_laws_s(g),
    }
}

fn law_json(report: &LawReport) -> Value {
    let laws: Vec<Value> = report
        .results
        .iter()
        .map(|(law, verdict)| match verdict {
            Verdict::Holds => json!({"law": law.to_string(), "holds": true}),
            Verdict::Fails(w) => json!({
                "law": law.to_string(),
                "holds": false,
                "vertex": w.vertex.to_string(),
                "left": w.left.to_string(),
                "right": w.right.to_string(),
            }),
        })
        .collect();
    json!({"monad": report.monad, "laws": laws})
}

pub fn laws_cmd(monad: MonadKind, graph: &Path) -> Attempt {
    let g = load::graph(graph)?;
    let report = law_report(monad, &g);
    let text = report.to_string().trim_end().to_owned();
    let result = if report.all_hold() {
        CommandResult::ok(text)
    } else {
        CommandResult::violation(text)
    };
    Ok(result.with_payload(law_json(&report)))
}

/// Largest order swept; 8 vertices would be 2^28 graphs.
pub const SWEEP_LIMIT: usize = 7;

pub fn laws_sweep_cmd(monad: MonadKind, max_n: usize) -> Attempt {
    if max_n > SWEEP_LIMIT {
        return Err(CommandResult::error(format!(
            "max-n {max_n} is above {SWEEP_LIMIT}"
        )));
    }
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    for n in 0..=max_n {
        let graphs: Vec<Arc<Graph>> = labeled_graphs(n).map(Arc::new).collect();
        let failed: Vec<(Arc<Graph>, LawReport)> = graphs
            .par_iter()
            .filter_map(|g| {
                let report = law_report(monad, g);
                (!report.all_hold()).then(|| (g.clone(), report))
            })
            .collect();
        counts.push(graphs.len());
        failures.extend(failed);
    }
    let total: usize = counts.iter().sum();
    let name = match monad {
        MonadKind::T => "T",
        MonadKind::S => "S",
    };
    let per_order: Vec<String> = counts
        .iter()
        .enumerate()
        .map(|(n, c)| format!("n={n}: {c}"))
        .collect();
    let mut report = format!(
        "{name} laws on {total} graphs ({}): {} failures",
        per_order.join(", "),
        failures.len()
    );
    if let Some((g, r)) = failures.first() {
        let (law, w) = r.first_failure().expect("a failing report");
        report.push_str(&format!("\nfirst failure on {g:?}: {law}: {w}"));
    }
    let payload = json!({
        "monad": name,
        "max_n": max_n,
        "graphs_per_order": counts,
        "failures": failures.iter().map(|(g, r)| json!({
            "graph": serialize_edge_list(g),
            "report": law_json(r),
        })).collect::<Vec<_>>(),
    });
    let result = if failures.is_empty() {
        CommandResult::ok(report)
    } else {
        CommandResult::violation(report)
    };
    Ok(result.with_payload(payload))
}

fn read_perf(path: &Path) -> Result<PerfectMatching, CommandResult> {
    let (g, map) = load::matching(path, None)?;
    PerfectMatching::from_labels(g, &map).map_err(|e| {
        let mut r = matching_error(e);
        r.report = format!("{}: {}", path.display(), r.report);
        r
    })
}

fn read_psts(path: &Path) -> Result<Psts, CommandResult> {
    let (points, triples) = load::psts(path)?;
    Psts::new(&points, &triples).map_err(|e| {
        let mut r = steiner_error(e);
        r.report = format!("{}: {}", path.display(), r.report);
        r
    })
}

pub fn product_cmd(kind: ProductKind, a: &Path, b: &Path) -> Attempt {
    match kind {
        ProductKind::Perf => {
            let (x, y) = (read_perf(a)?, read_perf(b)?);
            let p = product_perf(&x, &y);
            if let Verdict::Fails(w) = check_matching(p.graph(), &p.label_map()) {
                return Ok(CommandResult::violation(format!(
                    "constructed product fails validation: {w}"
                )));
            }
            let report = format!(
                "product: {} vertices, {} edges, {} matched pairs",
                p.graph().order(),
                p.graph().size(),
                p.graph().order() / 2
            );
            Ok(CommandResult::ok(report).with_document(to_value(&p.to_json())))
        }
        ProductKind::Psts => {
            let (x, y) = (read_psts(a)?, read_psts(b)?);
            let p = product_psts(&x, &y);
            let triples: Vec<Vec<VertexLabel>> = (0..p.triples().len())
                .map(|n| p.triple_labels(n).to_vec())
                .collect();
            if let Verdict::Fails(w) = is_psts(p.points(), &triples) {
                return Ok(CommandResult::violation(format!(
                    "constructed product fails validation: {w}"
                )));
            }
            let report = format!(
                "product: {} points, {} triples",
                p.points().len(),
                p.triples().len()
            );
            Ok(CommandResult::ok(report).with_document(to_value(&p.to_json())))
        }
    }
}

pub fn functor_cmd(monad: MonadKind, graph: &Path) -> Attempt {
    let g = load::graph(graph)?;
    let (name, image) = match monad {
        MonadKind::T => ("T", t_object(&g)),
        MonadKind::S => ("S", s_object(&g)),
    };
    let text = serialize_edge_list(&image);
    Ok(CommandResult::ok(format!(
        "{name}(G): {} vertices, {} edges",
        image.order(),
        image.size()
    ))
    .with_payload(json!({ "graph": text }))
    .with_artifact(text))
}

pub fn dot_cmd(graph: &Path, structure: Option<&Path>) -> Attempt {
    let g = load::graph(graph)?;
    let (deco, what) = match structure.map(load::structure).transpose()? {
        None => (Decorations::default(), String::new()),
        Some(Structure::Matching(map)) => {
            let m = PerfectMatching::from_labels(g.clone(), &map).map_err(matching_error)?;
            let n = m.edges().len();
            (m.decorations(), format!(", {n} matched edges highlighted"))
        }
        Some(Structure::Psts(points, triples)) => {
            let p = Psts::new(&points, &triples).map_err(steiner_error)?;
            if p.points() != g.vertices() {
                return Err(CommandResult::error(
                    "the system's points are not the graph's vertices",
                ));
            }
            if let Some((u, v)) = p
                .support_graph()
                .edge_labels()
                .find(|(u, v)| !g.adjacent_labels(u, v))
            {
                return Ok(CommandResult::violation(format!(
                    "triple side {{{u}, {v}}} is not an edge"
                )));
            }
            let n = p.triples().len();
            (p.decorations(), format!(", {n} triples colored"))
        }
    };
    let text = to_dot(&g, &deco);
    Ok(
        CommandResult::ok(format!("dot: {} vertices, {} edges{what}", g.order(), g.size()))
            .with_payload(json!({ "dot": text }))
            .with_artifact(text),
    )
}

fn algebra_hom(g: &Arc<Graph>, image: Graph, doc: &AlgebraJson) -> Result<Hom, CommandResult> {
    let mut map = BTreeMap::new();
    for (k, v) in &doc.map {
        let parsed = (k.parse::<VertexLabel>(), v.parse::<VertexLabel>());
        match parsed {
            (Ok(k), Ok(v)) => {
                map.insert(k, v);
            }
            (Err(e), _) | (_, Err(e)) => return Err(CommandResult::error(e)),
        }
    }
    Hom::from_labels(Arc::new(image), g.clone(), &map).map_err(category_error)
}

pub fn convert_cmd(direction: Direction, file: &Path, graph: Option<&Path>) -> Attempt {
    let explicit = graph.map(load::graph).transpose()?;
    let (report, doc) = match direction {
        Direction::MatchingToAlgebra => {
            let (g, map) = load::matching(file, explicit)?;
            let m = PerfectMatching::from_labels(g, &map).map_err(matching_error)?;
            let alpha = matching_to_algebra(&m);
            let doc = AlgebraJson::new("T", m.graph(), alpha.structure_map().to_json().map);
            ("T-algebra", to_value(&doc))
        }
        Direction::AlgebraToMatching => {
            let (g, doc) = load::algebra(file, "T")?;
            let g = explicit.unwrap_or(g);
            let alpha = algebra_hom(&g, t_object(&g), &doc)?;
            let alg = TAlgebra::new(alpha).map_err(matching_error)?;
            ("perfect matching", to_value(&algebra_to_matching(&alg).to_json()))
        }
        Direction::PstsToAlgebra => {
            let p = read_psts(file)?;
            let alg = psts_to_algebra(&p).map_err(steiner_error)?;
            let doc = AlgebraJson::new("S", alg.graph(), alg.structure_map().to_json().map);
            ("S-algebra", to_value(&doc))
        }
        Direction::AlgebraToPsts => {
            let (g, doc) = load::algebra(file, "S")?;
            let g = explicit.unwrap_or(g);
            let alpha = algebra_hom(&g, s_object(&g), &doc)?;
            let alg = SAlgebra::new(alpha).map_err(steiner_error)?;
            (
                "partial Steiner triple system",
                to_value(&algebra_to_psts(&alg).to_json()),
            )
        }
    };
    Ok(CommandResult::ok(format!("converted to {report}")).with_document(doc))
}
