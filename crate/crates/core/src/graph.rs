//! Finite simplicial graphs: validated construction, two wire formats,
//! elementary queries and clique enumeration.
//!
//! Vertices carry opaque string labels. The order of first appearance in the
//! input is the *global vertex order*; every algorithm in this crate that has
//! to make a canonical choice (least vertex, witness enumeration, tie
//! breaking) uses this order, so all outputs are deterministic for a fixed
//! input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Input/output format for graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

/// A finite undirected graph without loops or multi-edges.
///
/// Immutable value: derived graphs are fresh copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

/// A set of vertex labels, kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<String>,
}

impl VertexSet {
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut members: Vec<String> = labels.into_iter().map(Into::into).collect();
        members.sort();
        members.dedup();
        VertexSet { members }
    }

    pub fn empty() -> Self {
        VertexSet { members: Vec::new() }
    }

    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.members.binary_search_by(|m| m.as_str().cmp(label)).is_ok()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_labels(self.members.iter().chain(other.members.iter()).cloned())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_labels(self.members.iter().filter(|m| other.contains(m)).cloned())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.join(", "))
    }
}

fn valid_edge_list_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl SimplicialGraph {
    /// Builds a validated graph. Vertex order is preserved as given and
    /// becomes the global vertex order.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator,
        E::Item: Into<(String, String)>,
    {
        let mut g = SimplicialGraph {
            labels: Vec::new(),
            index: BTreeMap::new(),
            adj: Vec::new(),
            edges: BTreeSet::new(),
        };
        for v in vertices {
            g.declare_vertex(v.into())?;
        }
        for e in edges {
            let (u, v) = e.into();
            let ui = g.index_of(&u).ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let vi = g.index_of(&v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            g.add_edge_idx(ui, vi)?;
        }
        Ok(g)
    }

    fn declare_vertex(&mut self, label: String) -> Result<usize> {
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateVertex(label));
        }
        let idx = self.labels.len();
        self.index.insert(label.clone(), idx);
        self.labels.push(label);
        self.adj.push(BTreeSet::new());
        Ok(idx)
    }

    fn declare_or_get(&mut self, label: &str) -> usize {
        match self.index.get(label) {
            Some(&i) => i,
            None => self.declare_vertex(label.to_string()).expect("fresh label"),
        }
    }

    fn add_edge_idx(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::LoopEdge { vertex: self.labels[u].clone() });
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Err(Error::DuplicateEdge {
                u: self.labels[key.0].clone(),
                v: self.labels[key.1].clone(),
            });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn parse(text: &str, format: GraphFormat) -> Result<Self> {
        match format {
            GraphFormat::EdgeList => Self::parse_edge_list(text),
            GraphFormat::Json => Self::parse_json(text),
        }
    }

    /// Edge-list format: one edge per line as `label-label`, isolated
    /// vertices on their own line, `#` starts a comment, blank lines ignored.
    /// Labels match `[A-Za-z0-9_]+`. Edge endpoints are auto-declared in
    /// order of first appearance.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut g = SimplicialGraph {
            labels: Vec::new(),
            index: BTreeMap::new(),
            adj: Vec::new(),
            edges: BTreeSet::new(),
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax {
                location: format!("line {}", lineno + 1),
                message,
            };
            if let Some((lhs, rhs)) = line.split_once('-') {
                let (u, v) = (lhs.trim(), rhs.trim());
                for part in [u, v] {
                    if !valid_edge_list_label(part) {
                        return Err(syntax(format!("invalid label {part:?}")));
                    }
                }
                let ui = g.declare_or_get(u);
                let vi = g.declare_or_get(v);
                g.add_edge_idx(ui, vi)?;
            } else {
                if !valid_edge_list_label(line) {
                    return Err(syntax(format!("invalid label {line:?}")));
                }
                g.declare_vertex(line.to_string())?;
            }
        }
        Ok(g)
    }

    /// JSON format: `{"vertices":[...],"edges":[["u","v"],...]}`. Edge
    /// endpoints must be declared in `vertices`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let parsed: GraphJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        SimplicialGraph::new(parsed.vertices, parsed.edges)
    }

    /// Renders the edge-list format: all vertices declared first (preserving
    /// the global order, so parsing the output reproduces this graph), then
    /// the edges sorted by endpoint index.
    pub fn to_edge_list(&self) -> Result<String> {
        let mut out = String::new();
        for label in &self.labels {
            if !valid_edge_list_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            out.push_str(label);
            out.push('\n');
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{}-{}\n", self.labels[u], self.labels[v]));
        }
        Ok(out)
    }

    /// Byte-stable JSON: vertices in global order, edges sorted by endpoint
    /// index with the lesser-index endpoint first.
    pub fn to_json_string(&self) -> String {
        let doc = GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertex labels in the global order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn adjacent_idx(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors_idx(&self, u: usize) -> &BTreeSet<usize> {
        &self.adj[u]
    }

    pub fn degree_idx(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in sorted order.
    pub fn edges_idx(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Edges as label pairs, lesser index first, sorted by index pair.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    /// Induced subgraph on the index set `keep`, preserving the relative
    /// global order of the host graph.
    pub fn induced_by_indices(&self, keep: &BTreeSet<usize>) -> SimplicialGraph {
        let vertices: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect();
        SimplicialGraph::new(vertices, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Induced subgraph on a vertex selection. Errors if the selection
    /// mentions a vertex outside this graph.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<SimplicialGraph> {
        let mut keep = BTreeSet::new();
        for label in s.members() {
            match self.index_of(label) {
                Some(i) => {
                    keep.insert(i);
                }
                None => return Err(Error::UnknownVertex(label.clone())),
            }
        }
        Ok(self.induced_by_indices(&keep))
    }

    /// Connected components as index lists, each sorted, the list ordered by
    /// smallest member index.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Connected components as label sets; members sorted lexicographically,
    /// list sorted by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut comps: Vec<VertexSet> = self
            .component_indices()
            .into_iter()
            .map(|comp| VertexSet::from_labels(comp.into_iter().map(|i| self.labels[i].clone())))
            .collect();
        comps.sort_by(|a, b| a.members().first().cmp(&b.members().first()));
        comps
    }

    /// Enumerates every clique (complete vertex subset) of the graph,
    /// including the empty clique. Maximal cliques are found with
    /// Bron-Kerbosch pivoting and then expanded downward.
    ///
    /// Inputs above `cap` vertices are rejected: full enumeration is
    /// exponential in the worst case.
    pub fn enumerate_cliques(&self, cap: usize) -> Result<CliqueEnumeration> {
        let n = self.vertex_count();
        if n > cap {
            return Err(Error::AboveCap { vertices: n, cap });
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(Vec::new());
        for maximal in self.maximal_cliques_idx() {
            expand_subsets(&maximal, 0, &mut Vec::new(), &mut all);
        }
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for clique in &all {
            *counts.entry(clique.len()).or_insert(0) += 1;
        }
        let mut cliques: Vec<VertexSet> = all
            .iter()
            .map(|c| VertexSet::from_labels(c.iter().map(|&i| self.labels[i].clone())))
            .collect();
        cliques.sort();
        let max_size = counts.keys().copied().max().unwrap_or(0);
        Ok(CliqueEnumeration { counts, cliques, max_size })
    }

    /// Maximal cliques via Bron-Kerbosch with pivoting, as sorted index
    /// lists. The empty graph yields a single empty maximal clique.
    pub fn maximal_cliques_idx(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p: BTreeSet<usize> = (0..self.vertex_count()).collect();
        self.bron_kerbosch(&mut Vec::new(), p, BTreeSet::new(), &mut out);
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        // Pivot: vertex of P ∪ X with the most neighbours in P.
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| self.adj[u].intersection(&p).count())
            .expect("P ∪ X nonempty");
        let candidates: Vec<usize> = p.iter().filter(|v| !self.adj[pivot].contains(v)).copied().collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let np: BTreeSet<usize> = p.intersection(&self.adj[v]).copied().collect();
            let nx: BTreeSet<usize> = x.intersection(&self.adj[v]).copied().collect();
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
}

fn expand_subsets(
    clique: &[usize],
    from: usize,
    current: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    for i in from..clique.len() {
        current.push(clique[i]);
        out.insert(current.clone());
        expand_subsets(clique, i + 1, current, out);
        current.pop();
    }
}

/// Result of full clique enumeration: per-size counts and the sorted list of
/// all cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueEnumeration {
    pub counts: BTreeMap<usize, u64>,
    pub cliques: Vec<VertexSet>,
    pub max_size: usize,
}

impl CliqueEnumeration {
    pub fn count(&self, size: usize) -> u64 {
        self.counts.get(&size).copied().unwrap_or(0)
    }
}
