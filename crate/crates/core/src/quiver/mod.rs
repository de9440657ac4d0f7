//! Quivers, their path algebras, and the generated quiver `Q̃`.
//!
//! Adjacency matrices are indexed `adj[target][source]`, so powers of the
//! matrix count paths under left multiplication, matching the orientation of
//! fusion matrices.

mod graph;
mod path;

pub use graph::{scc, tilde, Condensation, ExtNat, TildeMatrix};
pub use path::{
    check_automorphism, enumerate_paths, parse_map_document, AutomorphismReport, GeneratorImages,
    Path, PathElement,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    adj: Vec<Vec<u32>>,
}

fn default_arrow_name(vertices: &[String], src: usize, dst: usize, copy: u32, mult: u32) -> String {
    if mult == 1 {
        format!("{}->{}", vertices[src], vertices[dst])
    } else {
        format!("{}->{}#{}", vertices[src], vertices[dst], copy)
    }
}

impl Quiver {
    fn check_vertices(vertices: &[String]) -> Result<()> {
        if vertices.is_empty() {
            return Err(Error::Schema("a quiver needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = vertices.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Schema(format!("duplicate vertex `{dup}`")));
        }
        Ok(())
    }

    /// Build from named arrows.
    pub fn from_arrows(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        Self::check_vertices(&vertices)?;
        let n = vertices.len();
        let mut adj = vec![vec![0u32; n]; n];
        let mut names = HashSet::new();
        for a in &arrows {
            if a.src >= n || a.dst >= n {
                return Err(Error::Schema(format!("arrow `{}` has an unknown endpoint", a.name)));
            }
            if !names.insert(a.name.as_str()) || vertices.contains(&a.name) {
                return Err(Error::Schema(format!("arrow name `{}` is not unique", a.name)));
            }
            adj[a.dst][a.src] += 1;
        }
        Ok(Quiver { vertices, arrows, adj })
    }

    /// Build from `adj[target][source]`, naming arrows automatically.
    pub fn from_adjacency(vertices: Vec<String>, adj: Vec<Vec<u32>>) -> Result<Self> {
        Self::check_vertices(&vertices)?;
        let n = vertices.len();
        if adj.len() != n || adj.iter().any(|row| row.len() != n) {
            return Err(Error::Schema(format!("adjacency must be {n}x{n}")));
        }
        let mut arrows = Vec::new();
        for src in 0..n {
            for (dst, row) in adj.iter().enumerate() {
                let mult = row[src];
                for copy in 0..mult {
                    arrows.push(Arrow {
                        name: default_arrow_name(&vertices, src, dst, copy, mult),
                        src,
                        dst,
                    });
                }
            }
        }
        Self::from_arrows(vertices, arrows)
    }

    /// Vertices named `0, 1, ..., n-1`.
    pub fn from_matrix(adj: Vec<Vec<u32>>) -> Result<Self> {
        let vertices = (0..adj.len()).map(|i| i.to_string()).collect();
        Self::from_adjacency(vertices, adj)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn has_default_names(&self) -> bool {
        let regenerated = Quiver::from_adjacency(self.vertices.clone(), self.adj.clone());
        regenerated.is_ok_and(|q| q.arrows == self.arrows)
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::InvalidArgument("not a permutation of the vertices".into()));
        }
        let mut vertices = vec![String::new(); n];
        for (v, &w) in perm.iter().enumerate() {
            vertices[w] = self.vertices[v].clone();
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), src: perm[a.src], dst: perm[a.dst] })
            .collect();
        Self::from_arrows(vertices, arrows)
    }

    pub fn to_document(&self) -> QuiverDocument {
        QuiverDocument {
            vertices: self.vertices.clone(),
            adjacency: Some(self.adj.clone()),
            edges: None,
            arrows: (!self.has_default_names()).then(|| {
                self.arrows
                    .iter()
                    .map(|a| ArrowDoc {
                        name: a.name.clone(),
                        src: self.vertices[a.src].clone(),
                        dst: self.vertices[a.dst].clone(),
                    })
                    .collect()
            }),
        }
    }

    pub fn from_document(doc: QuiverDocument) -> Result<Self> {
        let QuiverDocument { vertices, adjacency, edges, arrows } = doc;
        Self::check_vertices(&vertices)?;
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Schema(format!("unknown vertex `{name}`")))
        };
        let named: Option<Vec<Arrow>> = arrows
            .map(|list| {
                list.iter()
                    .map(|a| Ok(Arrow { name: a.name.clone(), src: index(&a.src)?, dst: index(&a.dst)? }))
                    .collect::<Result<_>>()
            })
            .transpose()?;
        match (adjacency, edges) {
            (Some(adj), None) => {
                let q = Self::from_adjacency(vertices.clone(), adj)?;
                match named {
                    None => Ok(q),
                    Some(arrows) => {
                        let q2 = Self::from_arrows(vertices, arrows)?;
                        if q2.adj != q.adj {
                            return Err(Error::Schema("arrows disagree with adjacency".into()));
                        }
                        Ok(q2)
                    }
                }
            }
            (None, Some(edges)) => {
                if named.is_some() {
                    return Err(Error::Schema("`arrows` is only allowed with `adjacency`".into()));
                }
                let mut arrows = Vec::new();
                let mut counts = vec![vec![0u32; vertices.len()]; vertices.len()];
                for e in &edges {
                    counts[index(&e.dst)?][index(&e.src)?] += e.mult;
                }
                for e in &edges {
                    let (src, dst) = (index(&e.src)?, index(&e.dst)?);
                    let names: Vec<String> = match (&e.name, &e.names) {
                        (Some(n), None) if e.mult == 1 => vec![n.clone()],
                        (None, Some(ns)) if ns.len() == e.mult as usize => ns.clone(),
                        (None, None) => {
                            let already = arrows.iter().filter(|a: &&Arrow| a.src == src && a.dst == dst).count() as u32;
                            (0..e.mult)
                                .map(|c| default_arrow_name(&vertices, src, dst, already + c, counts[dst][src]))
                                .collect()
                        }
                        _ => {
                            return Err(Error::Schema(format!(
                                "edge {} -> {}: names must match mult",
                                e.src, e.dst
                            )))
                        }
                    };
                    arrows.extend(names.into_iter().map(|name| Arrow { name, src, dst }));
                }
                Self::from_arrows(vertices, arrows)
            }
            _ => Err(Error::Schema("give exactly one of `adjacency` or `edges`".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub src: String,
    pub dst: String,
    #[serde(default = "one")]
    pub mult: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// Quiver file: either `{"vertices", "edges"}` or `{"vertices", "adjacency"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDocument {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<ArrowDoc>>,
}

pub fn load_quiver(json: &str) -> Result<Quiver> {
    let doc: QuiverDocument =
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    Quiver::from_document(doc)
}

pub fn save_quiver(q: &Quiver) -> String {
    serde_json::to_string_pretty(&q.to_document()).expect("quiver document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TRIANGLE: &str = r#"{
        "vertices": ["a", "b", "c"],
        "edges": [
            {"src": "a", "dst": "b", "name": "alpha"},
            {"src": "b", "dst": "c", "name": "beta"},
            {"src": "a", "dst": "c", "name": "gamma"}
        ]
    }"#;

    #[test]
    fn edges_form_builds_adjacency() {
        let q = load_quiver(TRIANGLE).unwrap();
        assert_eq!(q.adjacency(), &[vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0]]);
        assert_eq!(q.arrow_index("gamma"), Some(2));
    }

    #[test]
    fn emitted_form_is_adjacency_and_roundtrips() {
        let q = load_quiver(TRIANGLE).unwrap();
        let s = save_quiver(&q);
        assert!(s.contains("\"adjacency\""));
        assert!(!s.contains("\"edges\""));
        assert_eq!(load_quiver(&s).unwrap(), q);

        let plain = Quiver::from_matrix(vec![vec![0, 2], vec![1, 0]]).unwrap();
        let s = save_quiver(&plain);
        assert!(!s.contains("\"arrows\""));
        assert_eq!(load_quiver(&s).unwrap(), plain);
    }

    #[test]
    fn rejects_degenerate_documents() {
        assert!(load_quiver(r#"{"vertices": [], "adjacency": []}"#).is_err());
        assert!(load_quiver(r#"{"vertices": ["a"]}"#).is_err());
        assert!(load_quiver(r#"{"vertices": ["a", "a"], "adjacency": [[0,0],[0,0]]}"#).is_err());
        assert!(load_quiver(r#"{"vertices": ["a"], "edges": [{"src": "a", "dst": "z"}]}"#).is_err());
        assert!(load_quiver(r#"{"vertices": ["a"], "adjacency": [[0, 1]]}"#).is_err());
    }

    #[test]
    fn edgeless_single_vertex_is_legal() {
        let q = load_quiver(r#"{"vertices": ["a"], "edges": []}"#).unwrap();
        assert_eq!(q.adjacency(), &[vec![0]]);
    }

    #[test]
    fn multi_edges_get_distinct_names() {
        let q = load_quiver(r#"{"vertices": ["a","b"], "edges": [{"src":"a","dst":"b","mult":2}]}"#).unwrap();
        assert_eq!(q.arrows().len(), 2);
        assert_ne!(q.arrows()[0].name, q.arrows()[1].name);
    }
}
