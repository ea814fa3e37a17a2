//! Canonical test subjects: the small graphs the theory revolves around and
//! the presentation/graph-of-groups fixtures for the subgroup chain
//! G ⊃ U ⊃ H ⊃ V of the path group on four vertices.
//!
//! The chain in brief: G is the group of the path x-y-z-w; U = ker(f) for
//! the character f(x) = 1, f(y) = f(z) = 0, f(w) = p-1 has index p; H sits
//! inside U as an HNN extension over < y, z, z^x >; and V = < yz, yz^x,
//! y^p, t > is the index-p kernel of the exponent character of H, an HNN
//! extension whose abelianization has p-torsion.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::Result;
use crate::gog::{GogEdge, GraphOfGroups};
use crate::graph::SimplicialGraph;
use crate::presentation::{GroupPresentation, ModPCharacter};
use crate::word::Word;

/// The path x-y-z-w.
pub fn l3() -> SimplicialGraph {
    SimplicialGraph::parse_edge_list("x-y\ny-z\nz-w").expect("fixture is valid")
}

/// The 4-cycle a-b-c-d-a.
pub fn c4() -> SimplicialGraph {
    SimplicialGraph::parse_edge_list("a-b\nb-c\nc-d\nd-a").expect("fixture is valid")
}

/// The 4-cycle with one chord a-c.
pub fn kite() -> SimplicialGraph {
    SimplicialGraph::parse_edge_list("a-b\nb-c\nc-d\nd-a\na-c").expect("fixture is valid")
}

/// Complete graph on `v1..vn`.
pub fn complete(n: usize) -> SimplicialGraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone()));
        }
    }
    SimplicialGraph::new(labels, edges).expect("fixture is valid")
}

/// Path on `v1..vn`.
pub fn path(n: usize) -> SimplicialGraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String)> = (0..n.saturating_sub(1))
        .map(|i| (labels[i].clone(), labels[i + 1].clone()))
        .collect();
    SimplicialGraph::new(labels, edges).expect("fixture is valid")
}

/// The character f on the path group: f(x) = 1, f(y) = f(z) = 0,
/// f(w) = p - 1. Its kernel U has index p.
pub fn l3_character(p: u64) -> Result<ModPCharacter> {
    ModPCharacter::new(
        p,
        [
            ("x".to_string(), 1i64),
            ("y".to_string(), 0),
            ("z".to_string(), 0),
            ("w".to_string(), p as i64 - 1),
        ],
    )
}

/// H = `< y, z, zx, t | [y,z], [y,zx], z^t zx^-1 >`, the HNN extension of
/// `< y > x F(z, zx)` identifying z^t with zx (zx stands for the conjugate
/// z^x upstairs).
pub fn h_presentation() -> GroupPresentation {
    let conj = Word::from_syllables([("t", -1), ("z", 1), ("t", 1), ("zx", -1)])
        .expect("fixture word is reduced");
    GroupPresentation::new(
        ["y", "z", "zx", "t"],
        vec![Word::commutator("y", "z"), Word::commutator("y", "zx"), conj],
    )
    .expect("fixture presentation is valid")
}

/// The exponent-style character on H whose kernel is V: y maps to 1, z and
/// zx to p - 1, t to 0. All three relators vanish mod p.
pub fn h_character(p: u64) -> Result<ModPCharacter> {
    ModPCharacter::new(
        p,
        [
            ("y".to_string(), 1i64),
            ("z".to_string(), p as i64 - 1),
            ("zx".to_string(), p as i64 - 1),
            ("t".to_string(), 0),
        ],
    )
}

/// V = `< a, b, c, t | [a,b], [a,c], t^-1 b^p a^-1 t a c^-p >` where
/// a = y^p, b = yz, c = yzx. Its abelianization is Zp^3 + Z/p at every
/// prime.
pub fn v_presentation(p: u64) -> GroupPresentation {
    let p = p as i64;
    let hnn = Word::from_syllables([
        ("t", -1),
        ("b", p),
        ("a", -1),
        ("t", 1),
        ("a", 1),
        ("c", -p),
    ])
    .expect("fixture word is reduced");
    GroupPresentation::new(
        ["a", "b", "c", "t"],
        vec![Word::commutator("a", "b"), Word::commutator("a", "c"), hnn],
    )
    .expect("fixture presentation is valid")
}

/// V as a one-vertex, one-loop graph of groups: vertex group
/// `< a, b, c | [a,b], [a,c] >`, loop with procyclic edge group mapping to
/// b^p a^-1 on one side and c^p a^-1 on the other.
pub fn v_graph_of_groups(p: u64) -> GraphOfGroups {
    let p = p as i64;
    let vertex = GroupPresentation::new(
        ["a", "b", "c"],
        vec![Word::commutator("a", "b"), Word::commutator("a", "c")],
    )
    .expect("fixture presentation is valid");
    let edge = GogEdge {
        id: "t".into(),
        ends: ("v".into(), "v".into()),
        group: GroupPresentation::new(["g"], vec![]).expect("one free generator"),
        d0: [("g".to_string(), Word::from_syllables([("b", p), ("a", -1)]).unwrap())]
            .into_iter()
            .collect(),
        d1: [("g".to_string(), Word::from_syllables([("c", p), ("a", -1)]).unwrap())]
            .into_iter()
            .collect(),
    };
    GraphOfGroups::new(
        [("v".to_string(), vertex)].into_iter().collect(),
        vec![edge],
        BTreeSet::new(),
    )
    .expect("fixture graph of groups is valid")
}

/// The decomposition of the path group along its two edges: three vertex
/// groups `< x > x < y >`, `< y > x < z >`, `< z > x < w >` amalgamated
/// over `< y >` and `< z >`.
pub fn l3_graph_of_groups() -> GraphOfGroups {
    let mk = |a: &str, b: &str| {
        GroupPresentation::new([a, b], vec![Word::commutator(a, b)])
            .expect("fixture presentation is valid")
    };
    let single = |g: &str| GroupPresentation::new([g], vec![]).expect("one free generator");
    let edge = |id: &str, ends: (&str, &str), gen: &str| GogEdge {
        id: id.into(),
        ends: (ends.0.into(), ends.1.into()),
        group: single("g"),
        d0: [("g".to_string(), Word::generator(gen))].into_iter().collect(),
        d1: [("g".to_string(), Word::generator(gen))].into_iter().collect(),
    };
    GraphOfGroups::new(
        [
            ("v1".to_string(), mk("x", "y")),
            ("v2".to_string(), mk("y", "z")),
            ("v3".to_string(), mk("z", "w")),
        ]
        .into_iter()
        .collect(),
        vec![edge("e12", ("v1", "v2"), "y"), edge("e23", ("v2", "v3"), "z")],
        ["e12".to_string(), "e23".to_string()].into_iter().collect(),
    )
    .expect("fixture graph of groups is valid")
}

/// The graph of groups carrying U = ker(f) for the path group at prime p:
/// three spine vertices `< x^p > x < y >`, `< y > x < z >`, `< z > x < w^p >`
/// and p-1 conjugate vertices `< y > x < z^(x^i) >`, glued over `< y >` and
/// the conjugates of `< z >`; the p-1 non-tree edges contribute stable
/// letters realizing z^(t_i) = z^(x^i).
///
/// Generator naming: xp and wp for the p-th powers, zx1, zx2, ... for the
/// conjugates of z.
pub fn u_graph_of_groups(p: u64) -> GraphOfGroups {
    let pair = |a: &str, b: &str| {
        GroupPresentation::new([a, b], vec![Word::commutator(a, b)])
            .expect("fixture presentation is valid")
    };
    let single = |g: &str| GroupPresentation::new([g], vec![]).expect("one free generator");
    let mut vertices: BTreeMap<String, GroupPresentation> = BTreeMap::new();
    vertices.insert("v1".into(), pair("xp", "y"));
    vertices.insert("v2".into(), pair("y", "z"));
    vertices.insert("v3".into(), pair("z", "wp"));
    for i in 1..p {
        vertices.insert(format!("u{i}"), pair("y", &format!("zx{i}")));
    }
    let glue = |id: String, ends: (String, String), g0: &str, g1: &str| GogEdge {
        id,
        ends,
        group: single("g"),
        d0: [("g".to_string(), Word::generator(g0))].into_iter().collect(),
        d1: [("g".to_string(), Word::generator(g1))].into_iter().collect(),
    };
    let mut edges = vec![
        glue("e12".into(), ("v1".into(), "v2".into()), "y", "y"),
        glue("e23".into(), ("v2".into(), "v3".into()), "z", "z"),
    ];
    let mut tree: BTreeSet<String> = ["e12".to_string(), "e23".to_string()].into_iter().collect();
    for i in 1..p {
        let fid = format!("f{i}");
        edges.push(glue(fid.clone(), ("v1".into(), format!("u{i}")), "y", "y"));
        tree.insert(fid);
        // Non-tree edge: z in v3 conjugates to zx_i, giving stable letter t_i.
        edges.push(glue(format!("t{i}"), ("v3".into(), format!("u{i}")), "z", &format!("zx{i}")));
    }
    GraphOfGroups::new(vertices, edges, tree).expect("fixture graph of groups is valid")
}
