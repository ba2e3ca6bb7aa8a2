//! Commutation graphs and the JSON group file.
//!
//! A [`CommutationGraph`] fixes a finite vertex set in declaration order and a
//! symmetric edge relation without loops. The declaration order is the total
//! order used by canonical forms downstream, so fixtures control how elements
//! print.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex::VertexGroupKind;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("commutation is only defined between distinct vertices (got `{0}` twice)")]
    SameVertex(String),
    #[error("vertex name `{0}` is reserved or malformed")]
    BadName(String),
    #[error("no vertex group declared for `{0}`")]
    MissingVertexGroup(String),
    #[error("unknown vertex group tag `{0}`")]
    BadGroupTag(String),
    #[error("group file: {0}")]
    Json(String),
    #[error("reading {path}: {message}")]
    Io { path: String, message: String },
}

/// Finite simple graph with vertices in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<bool>>,
}

impl CommutationGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for v in vertices {
            let name = v.as_ref();
            if !valid_name(name) {
                return Err(GraphError::BadName(name.to_string()));
            }
            if index.insert(name.to_string(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(name.to_string()));
            }
            names.push(name.to_string());
        }
        let n = names.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let j = *index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if i == j {
                return Err(GraphError::Loop(a.to_string()));
            }
            adjacency[i][j] = true;
            adjacency[j][i] = true;
        }
        Ok(Self { names, index, adjacency })
    }

    /// Graph with no edges: its graph product is the free product.
    pub fn empty<S: AsRef<str>>(vertices: &[S]) -> Result<Self, GraphError> {
        Self::new::<&str>(
            &vertices.iter().map(|v| v.as_ref()).collect::<Vec<_>>(),
            &[],
        )
    }

    /// Graph with every edge: its graph product is the direct sum.
    pub fn complete<S: AsRef<str>>(vertices: &[S]) -> Result<Self, GraphError> {
        let names: Vec<&str> = vertices.iter().map(|v| v.as_ref()).collect();
        let mut edges = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                edges.push((names[i], names[j]));
            }
        }
        Self::new(&names, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Whether the vertex groups at `v0` and `v1` commute elementwise.
    pub fn commutes(&self, v0: &str, v1: &str) -> Result<bool, GraphError> {
        let i = self.vertex(v0)?;
        let j = self.vertex(v1)?;
        if i == j {
            return Err(GraphError::SameVertex(v0.to_string()));
        }
        Ok(self.adjacency[i][j])
    }

    /// Index-level adjacency; `false` on the diagonal.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "e"
        && !name.contains(|c: char| c.is_whitespace() || c == '^')
}

/// On-disk form of a graph product:
/// `{"vertices": [...], "edges": [[a, b], ...], "vertex_groups": {name: tag}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub vertex_groups: BTreeMap<String, String>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| GraphError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Validates the file and splits it into the graph and per-vertex groups.
    pub fn build(&self) -> Result<(CommutationGraph, Vec<VertexGroupKind>), GraphError> {
        let graph = CommutationGraph::new(&self.vertices, &self.edges)?;
        for key in self.vertex_groups.keys() {
            graph.vertex(key)?;
        }
        let groups = graph
            .names()
            .iter()
            .map(|name| {
                let tag = self
                    .vertex_groups
                    .get(name)
                    .ok_or_else(|| GraphError::MissingVertexGroup(name.clone()))?;
                tag.parse::<VertexGroupKind>()
                    .map_err(|_| GraphError::BadGroupTag(tag.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((graph, groups))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma1() -> CommutationGraph {
        CommutationGraph::new(&["u", "v", "w"], &[("u", "v")]).unwrap()
    }

    #[test]
    fn commutes_follows_edges() {
        let g = gamma1();
        assert_eq!(g.commutes("u", "v"), Ok(true));
        assert_eq!(g.commutes("v", "u"), Ok(true));
        assert_eq!(g.commutes("u", "w"), Ok(false));
        assert_eq!(g.commutes("u", "x"), Err(GraphError::UnknownVertex("x".into())));
        assert_eq!(g.commutes("u", "u"), Err(GraphError::SameVertex("u".into())));
    }

    #[test]
    fn complete_and_empty_graphs() {
        let names = ["a", "b", "c"];
        let k3 = CommutationGraph::complete(&names).unwrap();
        let e3 = CommutationGraph::empty(&names).unwrap();
        for x in names {
            for y in names {
                if x != y {
                    assert!(k3.commutes(x, y).unwrap());
                    assert!(!e3.commutes(x, y).unwrap());
                }
            }
        }
        assert_eq!(k3.edges().len(), 3);
    }

    #[test]
    fn rejects_loops_and_unknown_endpoints() {
        assert_eq!(
            CommutationGraph::new(&["u"], &[("u", "u")]),
            Err(GraphError::Loop("u".into()))
        );
        assert_eq!(
            CommutationGraph::new(&["u"], &[("u", "q")]),
            Err(GraphError::UnknownVertex("q".into()))
        );
        assert!(matches!(
            CommutationGraph::new(&["u", "u"], &[]),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(CommutationGraph::empty(&["e"]), Err(GraphError::BadName(_))));
    }

    #[test]
    fn group_file_round_trip_and_unknown_keys() {
        let text = r#"{"vertices": ["u","v","w"], "edges": [["u","v"]],
                       "vertex_groups": {"u":"Z","v":"Z","w":"Z/3"}}"#;
        let file = GroupFile::parse(text).unwrap();
        let (graph, groups) = file.build().unwrap();
        assert_eq!(graph, gamma1());
        assert_eq!(groups[2], VertexGroupKind::Cyclic(3));

        let bad = r#"{"vertices": ["u"], "vertex_groups": {"u":"Z"}, "colour": 1}"#;
        assert!(matches!(GroupFile::parse(bad), Err(GraphError::Json(_))));

        let missing = r#"{"vertices": ["u","v"], "vertex_groups": {"u":"Z"}}"#;
        assert_eq!(
            GroupFile::parse(missing).unwrap().build().unwrap_err(),
            GraphError::MissingVertexGroup("v".into())
        );
        let tag = r#"{"vertices": ["u"], "vertex_groups": {"u":"Q"}}"#;
        assert_eq!(
            GroupFile::parse(tag).unwrap().build().unwrap_err(),
            GraphError::BadGroupTag("Q".into())
        );
    }
}
