//! Entry points for the static demo page in `www/`. Each takes an edge list
//! and returns JSON describing a graph plus the structures found on it.

use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use graph_monads::graph::Graph;
use graph_monads::io::parse_edge_list;
use graph_monads::matching::{enumerate_matchings, t_object};
use graph_monads::steiner::{enumerate_psts_on, s_object};

/// Largest graph the page will enumerate on; bigger ones freeze the tab.
pub const DEMO_CAP: usize = 10;

#[derive(Debug, Serialize)]
pub struct Drawing {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    /// Per structure: the edges to highlight, grouped (one group per
    /// matched pair or per triple).
    pub structures: Vec<Vec<Vec<[usize; 2]>>>,
}

impl Drawing {
    fn of(g: &Graph) -> Drawing {
        Drawing {
            vertices: g.vertices().iter().map(|v| v.to_string()).collect(),
            edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
            structures: Vec::new(),
        }
    }
}

fn parse(edges: &str) -> Result<Arc<Graph>, String> {
    parse_edge_list(edges).map(Arc::new).map_err(|e| e.to_string())
}

fn render(d: &Drawing) -> String {
    serde_json::to_string(d).expect("serializable")
}

pub fn functor_image_json(monad: &str, edges: &str) -> Result<String, String> {
    let g = parse(edges)?;
    let image = match monad {
        "T" => t_object(&g),
        "S" => s_object(&g),
        other => return Err(format!("unknown monad {other:?}, expected T or S")),
    };
    Ok(render(&Drawing::of(&image)))
}

pub fn perfect_matchings_json(edges: &str) -> Result<String, String> {
    let g = parse(edges)?;
    let found = enumerate_matchings(&g, DEMO_CAP).map_err(|e| e.to_string())?;
    let mut d = Drawing::of(&g);
    d.structures = found
        .iter()
        .map(|m| m.edges().into_iter().map(|(i, j)| vec![[i, j]]).collect())
        .collect();
    Ok(render(&d))
}

pub fn steiner_systems_json(edges: &str) -> Result<String, String> {
    let g = parse(edges)?;
    let found = enumerate_psts_on(&g, DEMO_CAP).map_err(|e| e.to_string())?;
    let mut d = Drawing::of(&g);
    d.structures = found
        .iter()
        .map(|p| {
            p.triples()
                .iter()
                .map(|&[a, b, c]| vec![[a, b], [a, c], [b, c]])
                .collect()
        })
        .collect();
    Ok(render(&d))
}

#[wasm_bindgen]
pub fn functor_image(monad: &str, edges: &str) -> Result<String, JsError> {
    functor_image_json(monad, edges).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn perfect_matchings(edges: &str) -> Result<String, JsError> {
    perfect_matchings_json(edges).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn steiner_systems(edges: &str) -> Result<String, JsError> {
    steiner_systems_json(edges).map_err(|e| JsError::new(&e))
}
