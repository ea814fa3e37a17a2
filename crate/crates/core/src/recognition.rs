//! Certificate-producing recognition of the two graph classes the rest of
//! the crate keys on: graphs with no induced square/path-on-4-vertices, and
//! chordal graphs.
//!
//! Every positive or negative answer comes with a witness that can be
//! re-checked against the graph by an independent validation routine.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;

/// Which forbidden induced subgraph a witness exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenKind {
    /// The 4-cycle.
    Square,
    /// The path on 4 vertices.
    Path4,
}

/// Witness for an induced C4 or P4: four vertex labels, in cycle order for a
/// square and path order for a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenCertificate {
    pub kind: ForbiddenKind,
    pub witness: [String; 4],
}

impl ForbiddenCertificate {
    /// Re-checks the witness against `g`: the induced subgraph on the four
    /// vertices must be exactly a square (in the stated cycle order) or
    /// exactly a path (in the stated path order).
    pub fn check(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        let mut idx = [0usize; 4];
        for (k, label) in self.witness.iter().enumerate() {
            idx[k] = g
                .index_of(label)
                .ok_or_else(|| format!("witness vertex {label} not in graph"))?;
        }
        let distinct: BTreeSet<usize> = idx.iter().copied().collect();
        if distinct.len() != 4 {
            return Err("witness vertices are not distinct".into());
        }
        let must_hold: &[(usize, usize)] = match self.kind {
            ForbiddenKind::Square => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            ForbiddenKind::Path4 => &[(0, 1), (1, 2), (2, 3)],
        };
        for a in 0..4 {
            for b in a + 1..4 {
                let expected = must_hold.contains(&(a, b)) || must_hold.contains(&(b, a));
                if g.adjacent_idx(idx[a], idx[b]) != expected {
                    return Err(format!(
                        "pair ({}, {}) breaks the {} pattern",
                        self.witness[a],
                        self.witness[b],
                        match self.kind {
                            ForbiddenKind::Square => "square",
                            ForbiddenKind::Path4 => "path4",
                        }
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of chordality recognition with its validating witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ChordalityCertificate {
    /// A perfect elimination ordering: each vertex's later neighbours form a
    /// clique.
    Chordal { peo: Vec<String> },
    /// A chordless cycle of length at least 4, in cycle order.
    NotChordal { chordless_cycle: Vec<String> },
}

impl ChordalityCertificate {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalityCertificate::Chordal { .. })
    }

    /// Full re-validation of the certificate against `g`.
    pub fn check(&self, g: &SimplicialGraph) -> std::result::Result<(), String> {
        match self {
            ChordalityCertificate::Chordal { peo } => {
                let mut idx = Vec::with_capacity(peo.len());
                for label in peo {
                    idx.push(
                        g.index_of(label)
                            .ok_or_else(|| format!("peo vertex {label} not in graph"))?,
                    );
                }
                let distinct: BTreeSet<usize> = idx.iter().copied().collect();
                if distinct.len() != g.vertex_count() {
                    return Err("peo is not a permutation of the vertex set".into());
                }
                if !is_perfect_elimination_order(g, &idx) {
                    return Err("ordering is not a perfect elimination ordering".into());
                }
                Ok(())
            }
            ChordalityCertificate::NotChordal { chordless_cycle } => {
                let k = chordless_cycle.len();
                if k < 4 {
                    return Err("cycle shorter than 4".into());
                }
                let mut idx = Vec::with_capacity(k);
                for label in chordless_cycle {
                    idx.push(
                        g.index_of(label)
                            .ok_or_else(|| format!("cycle vertex {label} not in graph"))?,
                    );
                }
                let distinct: BTreeSet<usize> = idx.iter().copied().collect();
                if distinct.len() != k {
                    return Err("cycle vertices are not distinct".into());
                }
                for a in 0..k {
                    for b in a + 1..k {
                        let consecutive = b == a + 1 || (a == 0 && b == k - 1);
                        if g.adjacent_idx(idx[a], idx[b]) != consecutive {
                            return Err(format!(
                                "pair ({}, {}) violates chordlessness",
                                chordless_cycle[a], chordless_cycle[b]
                            ));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Full quadratic check of the perfect elimination property.
fn is_perfect_elimination_order(g: &SimplicialGraph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    for (p, &v) in order.iter().enumerate() {
        let later: Vec<usize> = g.neighbors_idx(v).iter().copied().filter(|&w| pos[w] > p).collect();
        for (a, &u) in later.iter().enumerate() {
            for &w in &later[a + 1..] {
                if !g.adjacent_idx(u, w) {
                    return false;
                }
            }
        }
    }
    true
}

/// Flat adjacency matrix, built once per search so the O(n^4) subset scans
/// pay a bit lookup instead of a set lookup per adjacency test.
struct DenseAdj {
    n: usize,
    bits: Vec<bool>,
}

impl DenseAdj {
    fn build(g: &SimplicialGraph) -> Self {
        let n = g.vertex_count();
        let mut bits = vec![false; n * n];
        for (u, v) in g.edges_idx() {
            bits[u * n + v] = true;
            bits[v * n + u] = true;
        }
        DenseAdj { n, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }
}

/// Counts edges inside a small index set.
fn induced_edge_count(adj: &DenseAdj, set: &[usize]) -> usize {
    let mut count = 0;
    for (a, &u) in set.iter().enumerate() {
        for &v in &set[a + 1..] {
            if adj.get(u, v) {
                count += 1;
            }
        }
    }
    count
}

fn find_forbidden(g: &SimplicialGraph, kind: ForbiddenKind) -> Option<ForbiddenCertificate> {
    let n = g.vertex_count();
    if n < 4 {
        return None;
    }
    let adj = DenseAdj::build(g);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // Any 3 vertices of a square span exactly 2 edges; of a
                // 4-path, 1 or 2. Prune the innermost loop accordingly.
                let e3 = induced_edge_count(&adj, &[i, j, k]);
                let feasible = match kind {
                    ForbiddenKind::Square => e3 == 2,
                    ForbiddenKind::Path4 => e3 == 1 || e3 == 2,
                };
                if !feasible {
                    continue;
                }
                for l in k + 1..n {
                    let set = [i, j, k, l];
                    if let Some(witness) = match_pattern(&adj, &set, kind) {
                        return Some(ForbiddenCertificate {
                            kind,
                            witness: witness.map(|v| g.label(v).to_string()),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Tests whether the 4-set induces the requested pattern and, if so, returns
/// it in canonical cycle/path order (least vertex first, then the lesser of
/// the two possible continuations).
fn match_pattern(adj: &DenseAdj, set: &[usize; 4], kind: ForbiddenKind) -> Option<[usize; 4]> {
    let degree = |v: usize| set.iter().filter(|&&w| adj.get(v, w)).count();
    let edges = induced_edge_count(adj, set);
    match kind {
        ForbiddenKind::Square => {
            if edges != 4 || set.iter().any(|&v| degree(v) != 2) {
                return None;
            }
            let start = set[0];
            let mut nbrs = set.iter().copied().filter(|&w| adj.get(start, w));
            let a = nbrs.next().unwrap();
            let b = nbrs.next().unwrap();
            let second = a.min(b);
            let last = a.max(b);
            let third = set
                .iter()
                .copied()
                .find(|&w| w != start && w != second && w != last)
                .unwrap();
            Some([start, second, third, last])
        }
        ForbiddenKind::Path4 => {
            if edges != 3 {
                return None;
            }
            let mut ends: Vec<usize> = set.iter().copied().filter(|&v| degree(v) == 1).collect();
            if ends.len() != 2 || set.iter().any(|&v| degree(v) > 2) {
                return None;
            }
            ends.sort_unstable();
            let start = ends[0];
            let mut path = vec![start];
            let mut prev = start;
            let mut cur = set.iter().copied().find(|&w| adj.get(start, w)).unwrap();
            path.push(cur);
            while path.len() < 4 {
                let next = set
                    .iter()
                    .copied()
                    .find(|&w| w != prev && adj.get(cur, w))
                    .unwrap();
                path.push(next);
                prev = cur;
                cur = next;
            }
            Some([path[0], path[1], path[2], path[3]])
        }
    }
}

/// Least 4-set (in the global vertex order) inducing a square, in cycle
/// order, or `None`.
pub fn find_induced_square(g: &SimplicialGraph) -> Option<ForbiddenCertificate> {
    find_forbidden(g, ForbiddenKind::Square)
}

/// Least 4-set inducing a path on 4 vertices, in path order, or `None`.
pub fn find_induced_path4(g: &SimplicialGraph) -> Option<ForbiddenCertificate> {
    find_forbidden(g, ForbiddenKind::Path4)
}

/// Least vertex adjacent to every other vertex of a connected nonempty
/// graph, or `None` if there is no such vertex.
pub fn find_dominating_vertex(g: &SimplicialGraph) -> Result<Option<String>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    Ok((0..n)
        .find(|&v| g.degree_idx(v) == n - 1)
        .map(|v| g.label(v).to_string()))
}

/// Lexicographic BFS visit order. Ties are broken toward the least vertex in
/// the global order.
fn lex_bfs(g: &SimplicialGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| labels[a].cmp(&labels[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors_idx(v) {
            if !visited[w] {
                labels[w].push(n - step);
            }
        }
    }
    order
}

/// Checks the candidate elimination order using the classical parent test;
/// on failure returns a triple `(v, u, w)` where `u, w` are later neighbours
/// of `v` that are not adjacent.
fn first_failing_triple(g: &SimplicialGraph, order: &[usize]) -> Option<(usize, usize, usize)> {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    for (p, &v) in order.iter().enumerate() {
        let mut later: Vec<usize> =
            g.neighbors_idx(v).iter().copied().filter(|&w| pos[w] > p).collect();
        later.sort_by_key(|&w| pos[w]);
        if later.len() < 2 {
            continue;
        }
        let u = later[0];
        for &w in &later[1..] {
            if !g.adjacent_idx(u, w) {
                return Some((v, u, w));
            }
        }
    }
    None
}

/// Shortest `u`-`w` path avoiding `v` and all neighbours of `v` other than
/// `u` and `w`; closing it through `v` yields a chordless cycle.
fn chordless_cycle_through(
    g: &SimplicialGraph,
    v: usize,
    u: usize,
    w: usize,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut allowed = vec![true; n];
    allowed[v] = false;
    for &x in g.neighbors_idx(v) {
        if x != u && x != w {
            allowed[x] = false;
        }
    }
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[u] = true;
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        if x == w {
            break;
        }
        for &y in g.neighbors_idx(x) {
            if allowed[y] && !seen[y] {
                seen[y] = true;
                prev[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    if !seen[w] {
        return None;
    }
    let mut path = vec![w];
    let mut cur = w;
    while let Some(p) = prev[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse(); // u .. w
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(canonical_cycle(&cycle))
}

/// Rotates a cycle so the least vertex comes first and the second vertex is
/// the lesser of its two cycle neighbours.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let m = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let succ = cycle[(m + 1) % k];
    let pred = cycle[(m + k - 1) % k];
    let mut out = Vec::with_capacity(k);
    if succ <= pred {
        for i in 0..k {
            out.push(cycle[(m + i) % k]);
        }
    } else {
        for i in 0..k {
            out.push(cycle[(m + k - i) % k]);
        }
    }
    out
}

fn cycle_is_chordless(g: &SimplicialGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    if distinct.len() != k {
        return false;
    }
    for a in 0..k {
        for b in a + 1..k {
            let consecutive = b == a + 1 || (a == 0 && b == k - 1);
            if g.adjacent_idx(cycle[a], cycle[b]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Exhaustive chordless-cycle search: scans all triples (v; u, w) of a
/// vertex with two non-adjacent neighbours. Finds a cycle whenever the graph
/// is not chordal.
fn any_chordless_cycle(g: &SimplicialGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors_idx(v).iter().copied().collect();
        for (a, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[a + 1..] {
                if g.adjacent_idx(u, w) {
                    continue;
                }
                if let Some(cycle) = chordless_cycle_through(g, v, u, w) {
                    if cycle_is_chordless(g, &cycle) {
                        return Some(cycle);
                    }
                }
            }
        }
    }
    None
}

/// Decides chordality. Chordal graphs get a perfect elimination ordering
/// computed by lexicographic BFS; non-chordal graphs get a chordless cycle
/// of length at least 4.
pub fn chordality(g: &SimplicialGraph) -> ChordalityCertificate {
    let mut order = lex_bfs(g);
    order.reverse();
    match first_failing_triple(g, &order) {
        None => ChordalityCertificate::Chordal {
            peo: order.into_iter().map(|v| g.label(v).to_string()).collect(),
        },
        Some((v, u, w)) => {
            let cycle = chordless_cycle_through(g, v, u, w)
                .filter(|c| cycle_is_chordless(g, c))
                .or_else(|| any_chordless_cycle(g))
                .expect("failed elimination order implies a chordless cycle exists");
            ChordalityCertificate::NotChordal {
                chordless_cycle: cycle.into_iter().map(|v| g.label(v).to_string()).collect(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimplicialGraph;

    fn graph(text: &str) -> SimplicialGraph {
        SimplicialGraph::parse_edge_list(text).unwrap()
    }

    fn complete(n: usize) -> SimplicialGraph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        SimplicialGraph::new(labels, edges).unwrap()
    }

    #[test]
    fn square_on_c4_in_cycle_order() {
        let c4 = graph("a-b\nb-c\nc-d\nd-a");
        let cert = find_induced_square(&c4).unwrap();
        assert_eq!(cert.kind, ForbiddenKind::Square);
        assert_eq!(cert.witness, ["a", "b", "c", "d"]);
        cert.check(&c4).unwrap();
    }

    #[test]
    fn no_square_in_k4_or_c5() {
        assert!(find_induced_square(&complete(4)).is_none());
        let c5 = graph("a-b\nb-c\nc-d\nd-e\ne-a");
        assert!(find_induced_square(&c5).is_none());
    }

    #[test]
    fn path4_on_l3_in_path_order() {
        let l3 = graph("x-y\ny-z\nz-w");
        let cert = find_induced_path4(&l3).unwrap();
        assert_eq!(cert.kind, ForbiddenKind::Path4);
        assert_eq!(cert.witness, ["x", "y", "z", "w"]);
        cert.check(&l3).unwrap();
    }

    #[test]
    fn no_path4_in_c4_or_k5() {
        let c4 = graph("a-b\nb-c\nc-d\nd-a");
        assert!(find_induced_path4(&c4).is_none());
        assert!(find_induced_path4(&complete(5)).is_none());
    }

    #[test]
    fn dominating_vertex_of_star_is_the_centre() {
        let star = graph("c-l1\nc-l2\nc-l3");
        assert_eq!(find_dominating_vertex(&star).unwrap(), Some("c".into()));
    }

    #[test]
    fn p4_has_no_dominating_vertex() {
        let p4 = graph("a-b\nb-c\nc-d");
        assert_eq!(find_dominating_vertex(&p4).unwrap(), None);
    }

    #[test]
    fn single_vertex_dominates_vacuously() {
        let g = graph("solo");
        assert_eq!(find_dominating_vertex(&g).unwrap(), Some("solo".into()));
    }

    #[test]
    fn dominating_vertex_rejects_bad_inputs() {
        let empty = SimplicialGraph::new(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        assert_eq!(find_dominating_vertex(&empty), Err(Error::EmptyGraph));
        let split = graph("a-b\nc-d");
        assert_eq!(find_dominating_vertex(&split), Err(Error::Disconnected));
    }

    #[test]
    fn c4_is_not_chordal_with_cycle_witness() {
        let c4 = graph("a-b\nb-c\nc-d\nd-a");
        let cert = chordality(&c4);
        match &cert {
            ChordalityCertificate::NotChordal { chordless_cycle } => {
                assert_eq!(chordless_cycle.len(), 4)
            }
            other => panic!("expected not_chordal, got {other:?}"),
        }
        cert.check(&c4).unwrap();
    }

    #[test]
    fn trees_and_kite_are_chordal() {
        for text in ["x-y\ny-z\nz-w", "r-a\nr-b\na-c\na-d", "a-b\nb-c\nc-d\nd-a\na-c"] {
            let g = graph(text);
            let cert = chordality(&g);
            assert!(cert.is_chordal(), "{text} should be chordal");
            cert.check(&g).unwrap();
        }
    }

    #[test]
    fn empty_graph_is_chordal() {
        let empty = SimplicialGraph::new(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        assert_eq!(chordality(&empty), ChordalityCertificate::Chordal { peo: vec![] });
    }

    // --- exhaustive oracles on all graphs with <= 5 vertices ---

    fn all_graphs(n: usize) -> impl Iterator<Item = SimplicialGraph> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (labels[i].clone(), labels[j].clone()))
                .collect();
            SimplicialGraph::new(labels, edges).unwrap()
        })
    }

    fn brute_force_has_pattern(g: &SimplicialGraph, kind: ForbiddenKind) -> bool {
        let n = g.vertex_count();
        let adj = DenseAdj::build(g);
        for mask in 0u32..1 << n {
            let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if subset.len() == 4 {
                let set = [subset[0], subset[1], subset[2], subset[3]];
                if match_pattern(&adj, &set, kind).is_some() {
                    return true;
                }
            }
        }
        false
    }

    fn brute_force_is_chordal(g: &SimplicialGraph) -> bool {
        let n = g.vertex_count();
        'subsets: for mask in 0u32..1 << n {
            let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if subset.len() < 4 {
                continue;
            }
            // Does the subset induce a cycle? (connected and 2-regular)
            for &v in &subset {
                let deg = subset.iter().filter(|&&w| g.adjacent_idx(v, w)).count();
                if deg != 2 {
                    continue 'subsets;
                }
            }
            let keep: BTreeSet<usize> = subset.iter().copied().collect();
            if g.induced_by_indices(&keep).is_connected() {
                return false;
            }
        }
        true
    }

    #[test]
    fn recognition_matches_brute_force_up_to_5_vertices() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                for kind in [ForbiddenKind::Square, ForbiddenKind::Path4] {
                    let found = find_forbidden(&g, kind);
                    assert_eq!(found.is_some(), brute_force_has_pattern(&g, kind));
                    if let Some(cert) = found {
                        cert.check(&g).unwrap();
                    }
                }
                let cert = chordality(&g);
                assert_eq!(cert.is_chordal(), brute_force_is_chordal(&g));
                cert.check(&g).unwrap();
            }
        }
    }

    #[test]
    fn dominating_vertex_dichotomy_holds_up_to_5_vertices() {
        for n in 1..=5 {
            for g in all_graphs(n) {
                if !g.is_connected() {
                    continue;
                }
                if find_dominating_vertex(&g).unwrap().is_none() {
                    assert!(
                        find_induced_square(&g).is_some() || find_induced_path4(&g).is_some(),
                        "connected graph without dominating vertex must contain C4 or P4"
                    );
                }
            }
        }
    }

    #[test]
    fn forbidden_freeness_is_hereditary_up_to_5_vertices() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                if find_induced_square(&g).is_some() || find_induced_path4(&g).is_some() {
                    continue;
                }
                for mask in 0u32..1 << n {
                    let keep: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    let sub = g.induced_by_indices(&keep);
                    assert!(find_induced_square(&sub).is_none());
                    assert!(find_induced_path4(&sub).is_none());
                }
            }
        }
    }
}
