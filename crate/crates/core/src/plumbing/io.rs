use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{PlumbingGraph, Vertex};
use crate::error::{Error, Result};

/// Wire form: `{"vertices":[{"id","euler","genus"}],"edges":[[a,b]]}`.
#[derive(Serialize, Deserialize)]
pub(super) struct GraphData {
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
}

impl TryFrom<GraphData> for PlumbingGraph {
    type Error = Error;
    fn try_from(d: GraphData) -> Result<Self> {
        PlumbingGraph::new(d.vertices, d.edges)
    }
}

impl From<PlumbingGraph> for GraphData {
    fn from(g: PlumbingGraph) -> Self {
        GraphData { vertices: g.vertices, edges: g.edges }
    }
}

impl PlumbingGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    /// Undirected DOT graph; Euler numbers are the labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plumbing {\n");
        for v in &self.vertices {
            let label = if v.genus == 0 { v.euler.to_string() } else { format!("{} [{}]", v.euler, v.genus) };
            writeln!(s, "  v{} [label=\"{}\", euler={}, genus={}];", v.id, label, v.euler, v.genus).unwrap();
        }
        for [a, b] in &self.edges {
            writeln!(s, "  v{a} -- v{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Reads the DOT dialect written by [`PlumbingGraph::to_dot`].
    pub fn from_dot(text: &str) -> Result<Self> {
        let bad = |line: &str| Error::Serde(format!("unrecognized DOT line: {line}"));
        let node_id = |tok: &str| -> Option<u32> { tok.trim().strip_prefix('v')?.parse().ok() };
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for raw in text.lines() {
            let line = raw.trim().trim_end_matches(';').trim();
            if line.is_empty() || line.starts_with("graph") || line == "}" || line.starts_with("//") {
                continue;
            }
            if let Some((a, b)) = line.split_once("--") {
                let (a, b) = (node_id(a).ok_or_else(|| bad(raw))?, node_id(b).ok_or_else(|| bad(raw))?);
                edges.push([a, b]);
                continue;
            }
            let (head, attrs) = line.split_once('[').ok_or_else(|| bad(raw))?;
            let id = node_id(head).ok_or_else(|| bad(raw))?;
            let attr = |key: &str| -> Option<&str> {
                attrs.trim_end_matches(']').split(',').find_map(|kv| {
                    let (k, v) = kv.split_once('=')?;
                    (k.trim() == key).then(|| v.trim().trim_matches('"'))
                })
            };
            let euler = attr("euler").and_then(|v| v.parse().ok()).ok_or_else(|| bad(raw))?;
            let genus = attr("genus").map_or(Ok(0), |v| v.parse().map_err(|_| bad(raw)))?;
            vertices.push(Vertex { id, euler, genus });
        }
        PlumbingGraph::new(vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema() {
        let g = PlumbingGraph::from_json(
            r#"{"vertices":[{"id":0,"euler":-2,"genus":0},{"id":5,"euler":-3}],"edges":[[0,5]]}"#,
        )
        .unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.vertex(5).unwrap().euler, -3);
        assert_eq!(PlumbingGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(PlumbingGraph::from_json(r#"{"vertices":[{"id":0,"euler":-2}],"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn dot_round_trip() {
        let mut vs = vec![Vertex::new(3, -1), Vertex::new(4, -13)];
        vs[1].genus = 2;
        let g = PlumbingGraph::new(vs, vec![[3, 4]]).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("v3 -- v4"));
        assert_eq!(PlumbingGraph::from_dot(&dot).unwrap(), g);
        assert!(PlumbingGraph::from_dot("graph x {\n  nonsense\n}").is_err());
    }
}
