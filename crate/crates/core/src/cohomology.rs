//! Dimension data of the mod-p cohomology of a right-angled Artin pro-p
//! group: the graded Betti numbers equal the clique counts of the graph, so
//! the whole report reduces to clique enumeration.
//!
//! The dimensions are independent of the prime, so the report carries no
//! prime parameter.

use serde::Serialize;

use crate::error::Result;
use crate::graph::SimplicialGraph;

/// Betti numbers b_0..b_d, the Poincare polynomial coefficients (identical
/// to the Betti numbers), the Euler characteristic and the top degree d
/// (size of a largest clique).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub betti: Vec<u64>,
    pub poincare: Vec<u64>,
    pub euler: i64,
    pub clique_dim: usize,
}

/// Computes the report by full clique enumeration; inputs above `cap`
/// vertices are rejected.
pub fn cohomology_report(g: &SimplicialGraph, cap: usize) -> Result<CohomologyReport> {
    let enumeration = g.enumerate_cliques(cap)?;
    let d = enumeration.max_size;
    let betti: Vec<u64> = (0..=d).map(|k| enumeration.count(k)).collect();
    let euler = betti
        .iter()
        .enumerate()
        .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    Ok(CohomologyReport { poincare: betti.clone(), betti, euler, clique_dim: d })
}
