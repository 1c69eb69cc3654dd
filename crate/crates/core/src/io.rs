//! JSON documents for families, bipartite graphs and layered graphs.
//!
//! ```text
//! family:  {"n": int, "k": int, "bicliques": [{"left": [int...], "right": [int...]}...]}
//! graph:   {"n_left": int, "n_right": int, "edges": [[int,int]...]}
//! layered: {"n": int, "m": int, "edges_vm": [[int,int]...], "edges_mw": [[int,int]...]}
//! ```
//!
//! Indices are 0-based. Bicliques may carry an optional `"label"` string, which
//! is accepted and ignored.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Biclique, BicliqueFamily, BipartiteGraph, LayeredGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicliqueDoc {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub n: usize,
    pub k: usize,
    pub bicliques: Vec<BicliqueDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n_left: usize,
    pub n_right: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayeredDoc {
    pub n: usize,
    pub m: usize,
    pub edges_vm: Vec<(usize, usize)>,
    pub edges_mw: Vec<(usize, usize)>,
}

/// Deserializes with the JSON path of the failing field in the error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            path: if path.is_empty() { "$".into() } else { path },
            message: inner.to_string(),
        }
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

impl FamilyDoc {
    pub fn from_family(family: &BicliqueFamily) -> Self {
        FamilyDoc {
            n: family.n(),
            k: family.k(),
            bicliques: family
                .bicliques()
                .iter()
                .map(|b| BicliqueDoc {
                    left: b.left.to_vec(),
                    right: b.right.to_vec(),
                    label: None,
                })
                .collect(),
        }
    }

    pub fn into_family(self) -> Result<BicliqueFamily> {
        if self.k == 0 || self.k > self.n {
            return Err(Error::Parse {
                path: "k".into(),
                message: format!("k must satisfy 1 <= k <= n (k={}, n={})", self.k, self.n),
            });
        }
        let mut bicliques = Vec::with_capacity(self.bicliques.len());
        for (i, b) in self.bicliques.iter().enumerate() {
            let biclique = Biclique::new(self.n, &b.left, &b.right).map_err(|e| match e {
                Error::IndexOutOfRange { context, index, bound } => Error::IndexOutOfRange {
                    context: format!("bicliques[{i}] {context}"),
                    index,
                    bound,
                },
                other => other,
            })?;
            bicliques.push(biclique);
        }
        BicliqueFamily::new(self.n, self.k, bicliques)
    }
}

impl GraphDoc {
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        GraphDoc {
            n_left: g.n_left(),
            n_right: g.n_right(),
            edges: g.edges(),
        }
    }

    pub fn into_graph(self) -> Result<BipartiteGraph> {
        BipartiteGraph::from_edges(self.n_left, self.n_right, &self.edges)
    }
}

impl LayeredDoc {
    pub fn from_layered(g: &LayeredGraph) -> Self {
        LayeredDoc {
            n: g.n(),
            m: g.m(),
            edges_vm: g.edges_vm(),
            edges_mw: g.edges_mw(),
        }
    }

    pub fn into_layered(self) -> Result<LayeredGraph> {
        LayeredGraph::from_edges(self.n, self.m, &self.edges_vm, &self.edges_mw)
    }
}

pub fn family_from_json(text: &str) -> Result<BicliqueFamily> {
    parse_json::<FamilyDoc>(text)?.into_family()
}

pub fn family_to_json(family: &BicliqueFamily) -> String {
    to_json(&FamilyDoc::from_family(family))
}

pub fn graph_from_json(text: &str) -> Result<BipartiteGraph> {
    parse_json::<GraphDoc>(text)?.into_graph()
}

pub fn graph_to_json(g: &BipartiteGraph) -> String {
    to_json(&GraphDoc::from_graph(g))
}

pub fn layered_from_json(text: &str) -> Result<LayeredGraph> {
    parse_json::<LayeredDoc>(text)?.into_layered()
}

pub fn layered_to_json(g: &LayeredGraph) -> String {
    to_json(&LayeredDoc::from_layered(g))
}

pub fn load_family(path: &Path) -> Result<BicliqueFamily> {
    family_from_json(&read_text(path)?)
}

pub fn load_graph(path: &Path) -> Result<BipartiteGraph> {
    graph_from_json(&read_text(path)?)
}

pub fn load_layered(path: &Path) -> Result<LayeredGraph> {
    layered_from_json(&read_text(path)?)
}

pub fn save_family(path: &Path, family: &BicliqueFamily) -> Result<()> {
    write_text(path, &family_to_json(family))
}

pub fn save_graph(path: &Path, g: &BipartiteGraph) -> Result<()> {
    write_text(path, &graph_to_json(g))
}

pub fn save_layered(path: &Path, g: &LayeredGraph) -> Result<()> {
    write_text(path, &layered_to_json(g))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
