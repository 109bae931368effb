use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    base: String,
}

/// Finite directed multigraph with a base vertex. Self-loops and parallel
/// edges are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    base: String,
    // Edge id -> position in `edges`; iteration gives lexicographic order.
    by_id: BTreeMap<String, usize>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, base: impl Into<String>) -> Result<Self> {
        let base = base.into();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v:?}")));
            }
        }
        if !seen.contains(base.as_str()) {
            return Err(Error::InvalidGraph(format!("base {base:?} is not a vertex")));
        }
        let mut by_id = BTreeMap::new();
        for (n, e) in edges.iter().enumerate() {
            for end in [&e.src, &e.dst] {
                if !seen.contains(end.as_str()) {
                    return Err(Error::InvalidGraph(format!("edge {:?} ends at unknown vertex {end:?}", e.id)));
                }
            }
            if by_id.insert(e.id.clone(), n).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge {:?}", e.id)));
            }
        }
        Ok(Self { vertices, edges, base, by_id })
    }

    /// Shorthand for tests and the built-in corpus.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)], base: &str) -> Result<Self> {
        Self::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges
                .iter()
                .map(|(id, src, dst)| Edge { id: id.to_string(), src: src.to_string(), dst: dst.to_string() })
                .collect(),
            base,
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    /// Edges in input order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges in lexicographic id order.
    pub fn edges_by_id(&self) -> impl Iterator<Item = &Edge> {
        self.by_id.values().map(|&n| &self.edges[n])
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.by_id.get(id).map(|&n| &self.edges[n])
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }

    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;
    fn try_from(w: GraphWire) -> Result<Self> {
        Graph::new(w.vertices, w.edges, w.base)
    }
}

impl From<Graph> for GraphWire {
    fn from(g: Graph) -> Self {
        GraphWire { vertices: g.vertices, edges: g.edges, base: g.base }
    }
}

/// One traversal of an edge; serialized as `["e1", 1]` or `["e1", -1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "(String, i8)", try_from = "(String, i8)")]
pub struct Step {
    pub edge: String,
    pub forward: bool,
}

impl From<Step> for (String, i8) {
    fn from(s: Step) -> Self {
        (s.edge, if s.forward { 1 } else { -1 })
    }
}

impl TryFrom<(String, i8)> for Step {
    type Error = String;
    fn try_from((edge, o): (String, i8)) -> std::result::Result<Self, String> {
        match o {
            1 => Ok(Step { edge, forward: true }),
            -1 => Ok(Step { edge, forward: false }),
            _ => Err(format!("orientation must be 1 or -1, got {o}")),
        }
    }
}

/// An edge path; the empty path is the trivial path at any vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSpec {
    pub steps: Vec<Step>,
}

impl PathSpec {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn edge(id: &str, forward: bool) -> Self {
        Self { steps: vec![Step { edge: id.to_string(), forward }] }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn then(&self, other: &PathSpec) -> PathSpec {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        PathSpec { steps }
    }

    pub fn inverse(&self) -> PathSpec {
        let steps = self.steps.iter().rev().map(|s| Step { edge: s.edge.clone(), forward: !s.forward }).collect();
        PathSpec { steps }
    }

    /// Start and end vertex, or `None` for the trivial path.
    pub fn endpoints<'g>(&self, graph: &'g Graph) -> Result<Option<(&'g str, &'g str)>> {
        let mut ends: Option<(&str, &str)> = None;
        for (n, s) in self.steps.iter().enumerate() {
            let e = graph.edge(&s.edge).ok_or_else(|| Error::InvalidPath(format!("unknown edge {:?}", s.edge)))?;
            let (from, to) = if s.forward { (&e.src, &e.dst) } else { (&e.dst, &e.src) };
            ends = match ends {
                None => Some((from, to)),
                Some((start, at)) if at == from => Some((start, to)),
                Some((_, at)) => {
                    return Err(Error::InvalidPath(format!("step {n} leaves {from:?} but the path is at {at:?}")));
                }
            };
        }
        Ok(ends)
    }

    pub fn is_loop_at(&self, graph: &Graph, v: &str) -> Result<bool> {
        Ok(match self.endpoints(graph)? {
            None => true,
            Some((a, b)) => a == v && b == v,
        })
    }
}
