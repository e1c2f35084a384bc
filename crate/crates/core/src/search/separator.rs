//! Weighted 1/2-clique separators of chordal graphs.

use crate::chordal::{is_chordal, maximal_cliques};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// True when deleting `clique` leaves no component heavier than half the total.
pub fn is_half_separator(g: &UndirectedGraph, weights: &[u64], clique: &[usize]) -> bool {
    let total: u64 = weights.iter().sum();
    let mut removed = vec![false; g.n()];
    for &v in clique {
        removed[v] = true;
    }
    g.components_avoiding(&removed)
        .iter()
        .all(|comp| 2 * comp.iter().map(|&v| weights[v]).sum::<u64>() <= total)
}

/// A clique whose removal leaves every component with at most half of the
/// total weight.
///
/// Every superset of a separator is a separator, so some maximal clique
/// always qualifies. Each qualifying maximal clique, and each of its
/// one-vertex-smaller subsets that qualifies, is shrunk greedily by dropping
/// the largest removable id. The smallest result wins, ties broken
/// lexicographically.
pub fn weighted_clique_separator(g: &UndirectedGraph, weights: &[u64]) -> Result<Vec<usize>> {
    if weights.len() != g.n() {
        return Err(Error::InvalidInput(format!(
            "expected {} weights, got {}",
            g.n(),
            weights.len()
        )));
    }
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    if is_half_separator(g, weights, &[]) {
        return Ok(Vec::new());
    }
    let mut best: Option<Vec<usize>> = None;
    for clique in maximal_cliques(g)? {
        if !is_half_separator(g, weights, &clique) {
            continue;
        }
        let mut starts = vec![clique.clone()];
        for skip in 0..clique.len() {
            let mut smaller = clique.clone();
            smaller.remove(skip);
            if is_half_separator(g, weights, &smaller) {
                starts.push(smaller);
            }
        }
        for start in starts {
            let shrunk = shrink(g, weights, start);
            let better = match &best {
                None => true,
                Some(b) => (shrunk.len(), &shrunk) < (b.len(), b),
            };
            if better {
                best = Some(shrunk);
            }
        }
    }
    Ok(best.expect("some maximal clique separates a chordal graph"))
}

fn shrink(g: &UndirectedGraph, weights: &[u64], mut sep: Vec<usize>) -> Vec<usize> {
    let mut i = sep.len();
    while i > 0 {
        i -= 1;
        let mut trial = sep.clone();
        trial.remove(i);
        if is_half_separator(g, weights, &trial) {
            sep = trial;
        }
    }
    sep
}
