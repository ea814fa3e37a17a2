//! Finite graphs of pro-p groups and the three decomposition tools built on
//! them: the explicit fundamental-group presentation (tree edges collapse,
//! non-tree edges contribute stable letters), clique-separator decomposition
//! of chordal graphs, and the rank recursion for the exponent-sum kernel of
//! a tree.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::presentation::GroupPresentation;
use crate::recognition::{chordality, ChordalityCertificate};
use crate::word::Word;

/// One edge of a graph of groups. Loops (HNN edges) are permitted, as are
/// parallel edges; the id keeps them apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogEdge {
    pub id: String,
    /// Endpoints (d0, d1); equal for a loop.
    pub ends: (String, String),
    pub group: GroupPresentation,
    /// Boundary maps sending each edge-group generator to a word in the
    /// corresponding endpoint vertex group.
    pub d0: BTreeMap<String, Word>,
    pub d1: BTreeMap<String, Word>,
}

/// A finite connected graph decorated with vertex and edge presentations,
/// boundary maps and a chosen spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertex_groups: BTreeMap<String, GroupPresentation>,
    pub edges: Vec<GogEdge>,
    pub spanning_tree: BTreeSet<String>,
}

impl GraphOfGroups {
    pub fn new(
        vertex_groups: BTreeMap<String, GroupPresentation>,
        edges: Vec<GogEdge>,
        spanning_tree: BTreeSet<String>,
    ) -> Result<Self> {
        let gog = GraphOfGroups { vertex_groups, edges, spanning_tree };
        gog.validate()?;
        Ok(gog)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidGraphOfGroups(msg));
        if self.vertex_groups.is_empty() {
            return fail("no vertices".into());
        }
        let mut ids = BTreeSet::new();
        for e in &self.edges {
            if !ids.insert(&e.id) {
                return fail(format!("duplicate edge id {}", e.id));
            }
            for end in [&e.ends.0, &e.ends.1] {
                if !self.vertex_groups.contains_key(end) {
                    return fail(format!("edge {} references unknown vertex {end}", e.id));
                }
            }
            for gen in e.group.generators() {
                let w0 = e.d0.get(gen);
                let w1 = e.d1.get(gen);
                if w0.is_none() || w1.is_none() {
                    return fail(format!(
                        "edge {}: boundary maps are not total on generator {gen}",
                        e.id
                    ));
                }
                for (map_name, word, end) in
                    [("d0", w0.unwrap(), &e.ends.0), ("d1", w1.unwrap(), &e.ends.1)]
                {
                    let target = &self.vertex_groups[end];
                    for (g, _) in word.syllables() {
                        if !target.generators().contains(g) {
                            return fail(format!(
                                "edge {}: {map_name} image of {gen} uses {g}, unknown in vertex group {end}",
                                e.id
                            ));
                        }
                    }
                }
            }
            for key in e.d0.keys().chain(e.d1.keys()) {
                if !e.group.generators().contains(key) {
                    return fail(format!(
                        "edge {}: boundary map defined on unknown generator {key}",
                        e.id
                    ));
                }
            }
        }
        for id in &self.spanning_tree {
            if !self.edges.iter().any(|e| &e.id == id) {
                return fail(format!("spanning tree references unknown edge {id}"));
            }
        }
        // The tree must span: |D| = |V| - 1 and connect every vertex.
        if self.spanning_tree.len() + 1 != self.vertex_groups.len() {
            return fail("spanning tree has the wrong number of edges".into());
        }
        let mut reached: BTreeSet<&String> = BTreeSet::new();
        reached.insert(self.vertex_groups.keys().next().expect("nonempty"));
        loop {
            let before = reached.len();
            for e in self.edges.iter().filter(|e| self.spanning_tree.contains(&e.id)) {
                if reached.contains(&e.ends.0) || reached.contains(&e.ends.1) {
                    reached.insert(&e.ends.0);
                    reached.insert(&e.ends.1);
                }
            }
            if reached.len() == before {
                break;
            }
        }
        if reached.len() != self.vertex_groups.len() {
            return fail("spanning tree does not reach every vertex".into());
        }
        Ok(())
    }

    /// Parses the graph-of-groups JSON schema:
    /// `{"vertices":{label:presentation},"edges":[{"id","ends":[u,v],
    /// "group":presentation,"d0":{gen:word},"d1":{gen:word}}],
    /// "spanning_tree":[edge ids]}`. Presentations and words use the
    /// presentation JSON conventions (including symbolic `p` exponents).
    pub fn parse_json(text: &str, prime: Option<u64>) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let fail = |msg: &str| Error::InvalidGraphOfGroups(msg.into());
        let obj = value.as_object().ok_or_else(|| fail("expected a JSON object"))?;
        let mut vertex_groups = BTreeMap::new();
        for (label, pres) in obj
            .get("vertices")
            .and_then(Value::as_object)
            .ok_or_else(|| fail("missing \"vertices\" object"))?
        {
            vertex_groups.insert(label.clone(), parse_embedded_presentation(pres, prime)?);
        }
        let mut edges = Vec::new();
        for edge in obj
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| fail("missing \"edges\" array"))?
        {
            let eobj = edge.as_object().ok_or_else(|| fail("edge is not an object"))?;
            let id = eobj
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| fail("edge without id"))?
                .to_string();
            let ends = eobj
                .get("ends")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| fail("edge ends must be a 2-element array"))?;
            let u = ends[0].as_str().ok_or_else(|| fail("edge end is not a string"))?;
            let v = ends[1].as_str().ok_or_else(|| fail("edge end is not a string"))?;
            let group = parse_embedded_presentation(
                eobj.get("group").ok_or_else(|| fail("edge without group"))?,
                prime,
            )?;
            let d0 = parse_boundary_map(eobj.get("d0"), prime)?;
            let d1 = parse_boundary_map(eobj.get("d1"), prime)?;
            edges.push(GogEdge { id, ends: (u.to_string(), v.to_string()), group, d0, d1 });
        }
        let spanning_tree = obj
            .get("spanning_tree")
            .and_then(Value::as_array)
            .ok_or_else(|| fail("missing \"spanning_tree\" array"))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| fail("spanning tree entry is not a string"))
            })
            .collect::<Result<_>>()?;
        GraphOfGroups::new(vertex_groups, edges, spanning_tree)
    }

    /// The explicit fundamental-group presentation.
    ///
    /// Generators: one class per vertex-group generator, where generators of
    /// distinct vertex groups are identified when a tree edge maps an
    /// edge-group generator to each of them as a bare equal-label generator;
    /// classes whose label stays ambiguous are disambiguated by vertex
    /// prefixing. Plus one stable letter per non-tree edge (named by the
    /// edge id).
    ///
    /// Relators: all vertex-group relators, and for every edge generator x
    /// the relation `d0(x) t_e d1(x)^-1 t_e^-1`, with `t_e = 1` collapsed
    /// for tree edges.
    pub fn fundamental_presentation(&self) -> Result<GroupPresentation> {
        // Union-find over (vertex, generator) pairs.
        let mut keys: Vec<(String, String)> = Vec::new();
        let mut key_index: BTreeMap<(String, String), usize> = BTreeMap::new();
        for (v, pres) in &self.vertex_groups {
            for g in pres.generators() {
                let key = (v.clone(), g.clone());
                key_index.insert(key.clone(), keys.len());
                keys.push(key);
            }
        }
        let mut parent: Vec<usize> = (0..keys.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for e in self.edges.iter().filter(|e| self.spanning_tree.contains(&e.id)) {
            for gen in e.group.generators() {
                let (w0, w1) = (&e.d0[gen], &e.d1[gen]);
                let (s0, s1) = (w0.syllables(), w1.syllables());
                if s0.len() == 1 && s1.len() == 1 && s0[0].1 == 1 && s1[0].1 == 1 && s0[0].0 == s1[0].0
                {
                    let a = key_index[&(e.ends.0.clone(), s0[0].0.clone())];
                    let b = key_index[&(e.ends.1.clone(), s1[0].0.clone())];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        // Name the classes: bare label when unique, vertex-prefixed when
        // two distinct classes share a label.
        let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..keys.len() {
            let root = find(&mut parent, i);
            class_members.entry(root).or_default().push(i);
        }
        let mut label_classes: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for &root in class_members.keys() {
            label_classes.entry(keys[root].1.as_str()).or_default().push(root);
        }
        let mut class_name: BTreeMap<usize, String> = BTreeMap::new();
        for (label, roots) in &label_classes {
            for &root in roots {
                let name = if roots.len() == 1 {
                    (*label).to_string()
                } else {
                    let first_vertex = class_members[&root]
                        .iter()
                        .map(|&i| &keys[i].0)
                        .min()
                        .expect("class is nonempty");
                    format!("{first_vertex}.{label}")
                };
                class_name.insert(root, name);
            }
        }
        // Generator order: first appearance over vertices (sorted) and
        // their presentation order, then stable letters in edge order.
        let mut generators: Vec<String> = Vec::new();
        let mut emitted: BTreeSet<usize> = BTreeSet::new();
        for (v, pres) in &self.vertex_groups {
            for g in pres.generators() {
                let root = find(&mut parent, key_index[&(v.clone(), g.clone())]);
                if emitted.insert(root) {
                    generators.push(class_name[&root].clone());
                }
            }
        }
        // Stable letters in edge declaration order, named by the edge id,
        // prefixed when that collides.
        let mut stable_letters: BTreeMap<&str, String> = BTreeMap::new();
        let mut stable_order: Vec<String> = Vec::new();
        for e in self.edges.iter().filter(|e| !self.spanning_tree.contains(&e.id)) {
            let name = if generators.contains(&e.id) || stable_order.contains(&e.id) {
                format!("t_{}", e.id)
            } else {
                e.id.clone()
            };
            if generators.contains(&name) || stable_order.contains(&name) {
                return Err(Error::InvalidGraphOfGroups(format!(
                    "cannot name a stable letter for edge {}: {name} is taken",
                    e.id
                )));
            }
            stable_letters.insert(e.id.as_str(), name.clone());
            stable_order.push(name);
        }
        generators.extend(stable_order);

        let mut rename = |vertex: &str, word: &Word| -> Result<Word> {
            let mut out = Word::identity();
            for (g, exp) in word.syllables() {
                let root = find(&mut parent, key_index[&(vertex.to_string(), g.clone())]);
                out.push(class_name[&root].clone(), *exp)?;
            }
            Ok(out)
        };

        let mut relators: Vec<Word> = Vec::new();
        for (v, pres) in &self.vertex_groups {
            for r in pres.relators() {
                let renamed = rename(v, r)?;
                if !renamed.is_identity() {
                    relators.push(renamed);
                }
            }
        }
        for e in &self.edges {
            let stable = stable_letters.get(e.id.as_str());
            for gen in e.group.generators() {
                let w0 = rename(&e.ends.0, &e.d0[gen])?;
                let w1 = rename(&e.ends.1, &e.d1[gen])?;
                let relator = match stable {
                    None => w0.concat(&w1.inverse())?,
                    Some(t) => {
                        let t_word = Word::generator(t.clone());
                        w0.concat(&t_word)?.concat(&w1.inverse())?.concat(&t_word.inverse())?
                    }
                };
                if !relator.is_identity() {
                    relators.push(relator);
                }
            }
        }
        GroupPresentation::new(generators, relators)
    }
}

fn parse_embedded_presentation(v: &Value, prime: Option<u64>) -> Result<GroupPresentation> {
    GroupPresentation::parse_json(&v.to_string(), prime)
}

fn parse_boundary_map(v: Option<&Value>, prime: Option<u64>) -> Result<BTreeMap<String, Word>> {
    let obj = v
        .and_then(Value::as_object)
        .ok_or_else(|| Error::InvalidGraphOfGroups("missing boundary map".into()))?;
    let mut map = BTreeMap::new();
    for (gen, word) in obj {
        map.insert(gen.clone(), parse_word_value(word, prime)?);
    }
    Ok(map)
}

/// A boundary image uses the syllable-array encoding of relators.
fn parse_word_value(v: &Value, prime: Option<u64>) -> Result<Word> {
    let syllables = v
        .as_array()
        .ok_or_else(|| Error::InvalidGraphOfGroups(format!("bad word {v}")))?;
    let mut word = Word::identity();
    for syl in syllables {
        let pair = syl
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidGraphOfGroups(format!("bad syllable {syl}")))?;
        let gen = pair[0]
            .as_str()
            .ok_or_else(|| Error::InvalidGraphOfGroups(format!("bad syllable {syl}")))?;
        let exp = crate::presentation::parse_exponent(&pair[1], prime)?;
        word.push(gen.to_string(), exp)?;
    }
    Ok(word)
}

/// Clique-separator decomposition tree of a chordal graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum DecompositionTree {
    CompleteLeaf {
        cover: VertexSet,
    },
    Amalgam {
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
        separator: VertexSet,
    },
}

impl DecompositionTree {
    pub fn cover(&self) -> VertexSet {
        match self {
            DecompositionTree::CompleteLeaf { cover } => cover.clone(),
            DecompositionTree::Amalgam { left, right, .. } => left.cover().union(&right.cover()),
        }
    }

    pub fn leaves(&self) -> Vec<&VertexSet> {
        match self {
            DecompositionTree::CompleteLeaf { cover } => vec![cover],
            DecompositionTree::Amalgam { left, right, .. } => {
                let mut out = left.leaves();
                out.extend(right.leaves());
                out
            }
        }
    }

    /// Validates the decomposition invariants against the source graph and
    /// checks that every edge lies inside some leaf.
    pub fn check(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        if self.cover() != VertexSet::from_labels(g.labels().to_vec()) {
            return Err("decomposition does not cover the vertex set".into());
        }
        self.check_node(g)?;
        for (u, v) in g.edge_labels() {
            if !self.leaves().iter().any(|l| l.contains(&u) && l.contains(&v)) {
                return Err(format!("edge {u}-{v} lies in no leaf"));
            }
        }
        Ok(())
    }

    fn check_node(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        let is_complete = |s: &VertexSet| -> std::result::Result<bool, String> {
            let idx: Vec<usize> = s
                .members()
                .iter()
                .map(|l| g.index_of(l).ok_or(format!("unknown vertex {l}")))
                .collect::<std::result::Result<_, _>>()?;
            Ok(idx
                .iter()
                .enumerate()
                .all(|(a, &u)| idx[a + 1..].iter().all(|&v| g.adjacent_idx(u, v))))
        };
        match self {
            DecompositionTree::CompleteLeaf { cover } => {
                if !is_complete(cover)? {
                    return Err(format!("leaf {cover} is not complete"));
                }
                Ok(())
            }
            DecompositionTree::Amalgam { left, right, separator } => {
                let (lc, rc) = (left.cover(), right.cover());
                if &lc.intersection(&rc) != separator {
                    return Err("separator is not the overlap of its sides".into());
                }
                if !is_complete(separator)? {
                    return Err(format!("separator {separator} is not complete"));
                }
                let cover = self.cover();
                if lc == cover || rc == cover {
                    return Err("a side of an amalgam is not a proper subset".into());
                }
                left.check_node(g)?;
                right.check_node(g)
            }
        }
    }
}

/// Enumerates k-subsets of 0..n in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for v in from..=n.saturating_sub(remaining) {
            current.push(v);
            rec(n, k, v + 1, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut current, &mut out);
    }
    out
}

/// Recursive clique-separator decomposition of a chordal graph: complete
/// graphs are leaves, otherwise the smallest clique whose removal
/// disconnects the graph splits it into two overlapping induced subgraphs.
///
/// Non-chordal inputs are rejected with their chordless-cycle certificate.
pub fn dirac_decompose(g: &SimplicialGraph) -> Result<DecompositionTree> {
    match chordality(g) {
        ChordalityCertificate::Chordal { .. } => Ok(decompose_chordal(g)),
        cert @ ChordalityCertificate::NotChordal { .. } => Err(Error::NotChordal(cert)),
    }
}

fn decompose_chordal(g: &SimplicialGraph) -> DecompositionTree {
    if g.is_complete() {
        return DecompositionTree::CompleteLeaf {
            cover: VertexSet::from_labels(g.labels().to_vec()),
        };
    }
    let n = g.vertex_count();
    for size in 0..n {
        for subset in k_subsets(n, size) {
            let complete = subset
                .iter()
                .enumerate()
                .all(|(a, &u)| subset[a + 1..].iter().all(|&v| g.adjacent_idx(u, v)));
            if !complete {
                continue;
            }
            let sep: BTreeSet<usize> = subset.iter().copied().collect();
            let rest: BTreeSet<usize> = (0..n).filter(|v| !sep.contains(v)).collect();
            let comps = g.induced_by_indices(&rest).component_indices();
            if comps.len() < 2 {
                continue;
            }
            let rest_labels: Vec<&String> = rest
                .iter()
                .map(|&i| &g.labels()[i])
                .collect();
            let to_host = |local: &[usize]| -> BTreeSet<usize> {
                local
                    .iter()
                    .map(|&li| g.index_of(rest_labels[li]).expect("component vertex"))
                    .collect()
            };
            let mut left_idx = to_host(&comps[0]);
            left_idx.extend(sep.iter().copied());
            let mut right_idx: BTreeSet<usize> = sep.clone();
            for comp in &comps[1..] {
                right_idx.extend(to_host(comp));
            }
            let left = decompose_chordal(&g.induced_by_indices(&left_idx));
            let right = decompose_chordal(&g.induced_by_indices(&right_idx));
            return DecompositionTree::Amalgam {
                left: Box::new(left),
                right: Box::new(right),
                separator: VertexSet::from_labels(
                    sep.iter().map(|&i| g.label(i).to_string()),
                ),
            };
        }
    }
    unreachable!("a non-complete chordal graph has a clique separator");
}

/// Rank of the exponent-sum kernel of the group of a finite tree, computed
/// by the pending-edge recursion: removing a pending vertex contributes one
/// free factor of rank 1. The trace records each removed pending vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeKernelRank {
    pub rank: usize,
    pub trace: Vec<String>,
}

pub fn tree_kernel_rank(t: &SimplicialGraph) -> Result<TreeKernelRank> {
    if t.is_empty() {
        return Err(Error::NotATree("empty graph".into()));
    }
    if !t.is_connected() {
        return Err(Error::NotATree("graph is disconnected".into()));
    }
    if t.edge_count() != t.vertex_count() - 1 {
        return Err(Error::NotATree(format!(
            "{} edges on {} vertices",
            t.edge_count(),
            t.vertex_count()
        )));
    }
    let mut alive: BTreeSet<usize> = (0..t.vertex_count()).collect();
    let mut rank = 0;
    let mut trace = Vec::new();
    while alive.len() > 1 {
        let leaf = alive
            .iter()
            .copied()
            .find(|&v| t.neighbors_idx(v).iter().filter(|w| alive.contains(w)).count() == 1)
            .expect("a tree with at least 2 vertices has a pending vertex");
        alive.remove(&leaf);
        rank += 1;
        trace.push(t.label(leaf).to_string());
    }
    Ok(TreeKernelRank { rank, trace })
}
