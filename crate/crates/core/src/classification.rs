//! The main dichotomy: either a graph admits an elementary-type construction
//! tree (iterated direct products with Zp and free pro-p products, driven by
//! dominating vertices), or it contains an induced square/4-path and the
//! associated pro-p group fails all six equivalent properties.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::recognition::{
    chordality, find_dominating_vertex, find_induced_path4, find_induced_square,
    ChordalityCertificate, ForbiddenCertificate,
};

/// Expression tree over Zp with two operations: direct product with Zp
/// (apex vertex joined to everything below) and free pro-p product (one
/// factor per connected component).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTree {
    #[serde(flatten)]
    pub node: ConstructionNode,
    /// Vertices this subtree accounts for.
    pub cover: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ConstructionNode {
    ZpLeaf {
        vertex: String,
    },
    DirectWithZp {
        apex: String,
        child: Box<ConstructionTree>,
    },
    FreeProduct {
        children: Vec<ConstructionTree>,
    },
}

impl ConstructionTree {
    /// Fully parenthesized expression over `Zp`, `x` (direct product) and
    /// `*` (free pro-p product).
    pub fn expression(&self) -> String {
        match &self.node {
            ConstructionNode::ZpLeaf { .. } => "Zp".to_string(),
            ConstructionNode::DirectWithZp { child, .. } => {
                format!("(Zp x {})", child.expression())
            }
            ConstructionNode::FreeProduct { children } => {
                let parts: Vec<String> = children.iter().map(|c| c.expression()).collect();
                format!("({})", parts.join(" * "))
            }
        }
    }

    /// Vertices consumed as leaves or apexes, in traversal order.
    pub fn consumed_vertices(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_consumed(&mut out);
        out
    }

    fn collect_consumed(&self, out: &mut Vec<String>) {
        match &self.node {
            ConstructionNode::ZpLeaf { vertex } => out.push(vertex.clone()),
            ConstructionNode::DirectWithZp { apex, child } => {
                out.push(apex.clone());
                child.collect_consumed(out);
            }
            ConstructionNode::FreeProduct { children } => {
                for c in children {
                    c.collect_consumed(out);
                }
            }
        }
    }

    /// Structural validation against the source graph: every vertex consumed
    /// exactly once, apexes dominate their child's cover, free products
    /// split along connected components.
    pub fn check(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        let consumed = self.consumed_vertices();
        let as_set: BTreeSet<&String> = consumed.iter().collect();
        if as_set.len() != consumed.len() {
            return Err("a vertex is consumed more than once".into());
        }
        if consumed.len() != g.vertex_count() || !consumed.iter().all(|v| g.contains_vertex(v)) {
            return Err("consumed vertices do not match the vertex set".into());
        }
        self.check_node(g)
    }

    fn check_node(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        match &self.node {
            ConstructionNode::ZpLeaf { vertex } => {
                if self.cover.members() != [vertex.clone()] {
                    return Err(format!("leaf {vertex} has inconsistent cover"));
                }
                Ok(())
            }
            ConstructionNode::DirectWithZp { apex, child } => {
                if child.cover.contains(apex) {
                    return Err(format!("apex {apex} appears below itself"));
                }
                let expected = child.cover.union(&VertexSet::from_labels([apex.clone()]));
                if expected != self.cover {
                    return Err(format!("apex {apex} node has inconsistent cover"));
                }
                let a = g.index_of(apex).ok_or(format!("unknown apex {apex}"))?;
                for v in child.cover.members() {
                    let vi = g.index_of(v).ok_or(format!("unknown vertex {v}"))?;
                    if !g.adjacent_idx(a, vi) {
                        return Err(format!("apex {apex} is not adjacent to {v}"));
                    }
                }
                child.check_node(g)
            }
            ConstructionNode::FreeProduct { children } => {
                if children.len() < 2 {
                    return Err("free product with fewer than 2 factors".into());
                }
                let mut union = VertexSet::empty();
                let mut total = 0;
                for c in children {
                    total += c.cover.len();
                    union = union.union(&c.cover);
                }
                if union != self.cover || total != union.len() {
                    return Err("free product factors do not partition the cover".into());
                }
                let keep: BTreeSet<usize> = self
                    .cover
                    .members()
                    .iter()
                    .map(|v| g.index_of(v).expect("cover vertex in graph"))
                    .collect();
                let comps = g.induced_by_indices(&keep).connected_components();
                if comps.len() != children.len() {
                    return Err("free product factors do not match connected components".into());
                }
                for c in children {
                    if !comps.contains(&c.cover) {
                        return Err(format!("factor {} is not a connected component", c.cover));
                    }
                    c.check_node(g)?;
                }
                Ok(())
            }
        }
    }
}

/// Result of the construction recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    ElementaryType(ConstructionTree),
    Forbidden(ForbiddenCertificate),
}

/// Runs the construction recursion on a nonempty graph: disconnected graphs
/// split as free products over components, connected graphs with a
/// dominating vertex peel it off as a direct Zp factor, and a connected
/// graph without a dominating vertex necessarily contains an induced square
/// or 4-path, which is returned as the obstruction.
pub fn build_construction_tree(g: &SimplicialGraph) -> Result<BuildOutcome> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let comps = g.component_indices();
    if comps.len() >= 2 {
        let mut children = Vec::with_capacity(comps.len());
        for comp in comps {
            let keep: BTreeSet<usize> = comp.into_iter().collect();
            match build_construction_tree(&g.induced_by_indices(&keep))? {
                BuildOutcome::ElementaryType(t) => children.push(t),
                forbidden @ BuildOutcome::Forbidden(_) => return Ok(forbidden),
            }
        }
        let cover = children
            .iter()
            .fold(VertexSet::empty(), |acc, c| acc.union(&c.cover));
        return Ok(BuildOutcome::ElementaryType(ConstructionTree {
            node: ConstructionNode::FreeProduct { children },
            cover,
        }));
    }
    if g.vertex_count() == 1 {
        let vertex = g.label(0).to_string();
        return Ok(BuildOutcome::ElementaryType(ConstructionTree {
            cover: VertexSet::from_labels([vertex.clone()]),
            node: ConstructionNode::ZpLeaf { vertex },
        }));
    }
    match find_dominating_vertex(g)? {
        Some(apex) => {
            let apex_idx = g.index_of(&apex).expect("dominating vertex is in the graph");
            let keep: BTreeSet<usize> =
                (0..g.vertex_count()).filter(|&v| v != apex_idx).collect();
            match build_construction_tree(&g.induced_by_indices(&keep))? {
                BuildOutcome::ElementaryType(child) => {
                    let cover = child.cover.union(&VertexSet::from_labels([apex.clone()]));
                    Ok(BuildOutcome::ElementaryType(ConstructionTree {
                        node: ConstructionNode::DirectWithZp { apex, child: Box::new(child) },
                        cover,
                    }))
                }
                forbidden @ BuildOutcome::Forbidden(_) => Ok(forbidden),
            }
        }
        None => {
            let cert = find_induced_square(g)
                .or_else(|| find_induced_path4(g))
                .expect("a connected graph without a dominating vertex contains C4 or P4");
            Ok(BuildOutcome::Forbidden(cert))
        }
    }
}

/// The six equivalent group properties, in the order they are reported.
pub const PROPERTY_NAMES: [&str; 6] = [
    "no_induced_c4_or_p4",
    "all_closed_subgroups_raag",
    "absolutely_torsion_free",
    "bloch_kato",
    "maximal_pro_p_galois_group",
    "elementary_type",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyFlag {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edge_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ElementaryType,
    Forbidden,
}

/// Complete classification of one graph: the dichotomy verdict with its
/// witness, the six equivalent property flags (all derived from the
/// forbidden-subgraph test, never computed independently), universal
/// Koszulity, and coherence with its chordality certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub graph_summary: GraphSummary,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionTree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_cert: Option<ForbiddenCertificate>,
    pub equivalent_properties: Vec<PropertyFlag>,
    pub universally_koszul: bool,
    pub coherent: bool,
    pub chordality_cert: ChordalityCertificate,
}

impl ClassificationReport {
    pub fn is_elementary_type(&self) -> bool {
        self.verdict == Verdict::ElementaryType
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Classifies a graph. The empty graph is the one degenerate case: it is
/// vacuously forbidden-subgraph-free (all flags true) but the trivial group
/// has no construction tree, so `construction` is omitted.
pub fn classify(g: &SimplicialGraph) -> ClassificationReport {
    let (verdict, construction, forbidden_cert) = if g.is_empty() {
        (Verdict::ElementaryType, None, None)
    } else {
        match build_construction_tree(g).expect("graph is nonempty") {
            BuildOutcome::ElementaryType(t) => (Verdict::ElementaryType, Some(t), None),
            BuildOutcome::Forbidden(c) => (Verdict::Forbidden, None, Some(c)),
        }
    };
    let holds = verdict == Verdict::ElementaryType;
    let chordality_cert = chordality(g);
    ClassificationReport {
        graph_summary: GraphSummary {
            vertices: g.labels().to_vec(),
            edge_count: g.edge_count(),
        },
        verdict,
        construction,
        forbidden_cert,
        equivalent_properties: PROPERTY_NAMES
            .iter()
            .map(|&name| PropertyFlag { name: name.to_string(), holds })
            .collect(),
        universally_koszul: holds,
        coherent: chordality_cert.is_chordal(),
        chordality_cert,
    }
}
