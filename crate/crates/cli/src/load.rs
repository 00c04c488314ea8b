//! Reading input files. Every failure here is a data error (exit 2).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use graph_monads::graph::Graph;
use graph_monads::io::{parse_edge_list, serialize_edge_list, ParseError};
use graph_monads::label::{LabelError, VertexLabel};
use graph_monads::matching::{GraphRef, MatchingJson};
use graph_monads::steiner::PstsJson;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    EdgeList {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: {source}", path.display())]
    Label {
        path: PathBuf,
        #[source]
        source: LabelError,
    },
    #[error("{}: {message}", path.display())]
    Shape { path: PathBuf, message: String },
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })
}

fn graph_text(text: &str, path: &Path) -> Result<Arc<Graph>, LoadError> {
    parse_edge_list(text)
        .map(Arc::new)
        .map_err(|source| LoadError::EdgeList {
            path: path.to_owned(),
            source,
        })
}

pub fn graph(path: &Path) -> Result<Arc<Graph>, LoadError> {
    graph_text(&read(path)?, path)
}

fn json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, LoadError> {
    serde_json::from_str(&read(path)?).map_err(|source| LoadError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Resolves a graph reference found inside `owner`; file references are
/// relative to `owner`'s directory.
fn graph_ref(r: &GraphRef, owner: &Path) -> Result<Arc<Graph>, LoadError> {
    match r {
        GraphRef::Inline(text) => graph_text(text, owner),
        GraphRef::File { file } => {
            let base = owner.parent().unwrap_or(Path::new("."));
            graph(&base.join(file))
        }
    }
}

fn labels<T>(r: Result<T, LabelError>, path: &Path) -> Result<T, LoadError> {
    r.map_err(|source| LoadError::Label {
        path: path.to_owned(),
        source,
    })
}

/// A matching file and its graph: `explicit` wins over the file's own
/// `graph` field.
pub fn matching(
    path: &Path,
    explicit: Option<Arc<Graph>>,
) -> Result<(Arc<Graph>, BTreeMap<VertexLabel, VertexLabel>), LoadError> {
    let doc: MatchingJson = json(path)?;
    let g = match (explicit, &doc.graph) {
        (Some(g), _) => g,
        (None, Some(r)) => graph_ref(r, path)?,
        (None, None) => {
            return Err(LoadError::Shape {
                path: path.to_owned(),
                message: "no graph given and the file has no \"graph\" field".into(),
            })
        }
    };
    Ok((g, labels(doc.label_map(), path)?))
}

pub fn psts(path: &Path) -> Result<(Vec<VertexLabel>, Vec<Vec<VertexLabel>>), LoadError> {
    let doc: PstsJson = json(path)?;
    labels(doc.labels(), path)
}

/// `{"monad": "T" | "S", "graph": <edge list or {"file": path}>, "map": {...}}`.
///
/// The map runs from `M(G)` to `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub monad: String,
    pub graph: GraphRef,
    pub map: BTreeMap<String, String>,
}

impl AlgebraJson {
    pub fn new(monad: &str, g: &Graph, map: BTreeMap<String, String>) -> AlgebraJson {
        AlgebraJson {
            monad: monad.to_owned(),
            graph: GraphRef::Inline(serialize_edge_list(g)),
            map,
        }
    }
}

pub fn algebra(path: &Path, monad: &str) -> Result<(Arc<Graph>, AlgebraJson), LoadError> {
    let doc: AlgebraJson = json(path)?;
    if doc.monad != monad {
        return Err(LoadError::Shape {
            path: path.to_owned(),
            message: format!("expected a {monad}-algebra, found monad {:?}", doc.monad),
        });
    }
    Ok((graph_ref(&doc.graph, path)?, doc))
}

/// What an optional structure file passed to `dot` holds.
pub enum Structure {
    Matching(BTreeMap<VertexLabel, VertexLabel>),
    Psts(Vec<VertexLabel>, Vec<Vec<VertexLabel>>),
}

pub fn structure(path: &Path) -> Result<Structure, LoadError> {
    let value: serde_json::Value = json(path)?;
    let shape = |message: &str| LoadError::Shape {
        path: path.to_owned(),
        message: message.to_owned(),
    };
    if value.get("matching").is_some() {
        let doc: MatchingJson = serde_json::from_value(value).map_err(|source| LoadError::Json {
            path: path.to_owned(),
            source,
        })?;
        Ok(Structure::Matching(labels(doc.label_map(), path)?))
    } else if value.get("triples").is_some() {
        let (points, triples) = psts(path)?;
        Ok(Structure::Psts(points, triples))
    } else {
        Err(shape("expected a matching or a partial Steiner system"))
    }
}
