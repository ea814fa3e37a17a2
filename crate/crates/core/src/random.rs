//! Seeded random instance generators used by the consistency sweeps: plain
//! graphs, chordal graphs grown by elimination orderings, and small integer
//! matrices. Everything is driven by a ChaCha stream so runs are
//! reproducible from a seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::SimplicialGraph;
use crate::snf::IntMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi style graph on `v0..v{n-1}` with independent edge
/// probability.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, edge_probability: f64) -> SimplicialGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    SimplicialGraph::new(labels, edges).expect("generated graph is valid")
}

/// Random chordal graph grown by a perfect elimination ordering: each new
/// vertex attaches to a clique of the graph built so far, so the reverse
/// insertion order eliminates perfectly.
pub fn random_chordal_graph(rng: &mut ChaCha8Rng, n: usize) -> SimplicialGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut built =
        SimplicialGraph::new(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
    for (i, label) in labels.iter().enumerate() {
        let cliques = built
            .enumerate_cliques(n.max(1))
            .expect("intermediate graphs stay under the cap")
            .cliques;
        let attach = &cliques[rng.gen_range(0..cliques.len())];
        for other in attach.members() {
            edges.push((other.clone(), label.clone()));
        }
        built = SimplicialGraph::new(labels[..=i].to_vec(), edges.clone())
            .expect("attachment preserves validity");
    }
    SimplicialGraph::new(labels, edges).expect("generated graph is valid")
}

/// Matrix with independent uniform entries in `lo..=hi`.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::chordality;

    #[test]
    fn seeded_runs_are_reproducible() {
        let a = random_graph(&mut seeded_rng(7), 8, 0.4).to_json_string();
        let b = random_graph(&mut seeded_rng(7), 8, 0.4).to_json_string();
        assert_eq!(a, b);
    }

    #[test]
    fn chordal_generator_output_is_chordal() {
        let mut rng = seeded_rng(11);
        for n in 0..=9 {
            let g = random_chordal_graph(&mut rng, n);
            assert!(chordality(&g).is_chordal(), "n = {n}");
        }
    }
}
