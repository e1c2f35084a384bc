//! Chordality testing and maximal cliques via maximum cardinality search.

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Maximum cardinality search visit order (ties broken by smallest id).
/// Reversing it yields a perfect elimination order when the graph is chordal.
pub fn mcs_order(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if !visited[v] && best.is_none_or(|b| weight[v] > weight[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// `Some(peo)` iff the graph is chordal. In the returned order every vertex's
/// later neighbors form a clique.
pub fn perfect_elimination_order(g: &UndirectedGraph) -> Option<Vec<usize>> {
    let mut peo = mcs_order(g);
    peo.reverse();
    let mut pos = vec![0; g.n()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &peo {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        for (i, &x) in later.iter().enumerate() {
            for &y in &later[i + 1..] {
                if !g.is_adjacent(x, y) {
                    return None;
                }
            }
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &UndirectedGraph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// All maximal cliques of a chordal graph, each sorted, in lexicographic order.
pub fn maximal_cliques(g: &UndirectedGraph) -> Result<Vec<Vec<usize>>> {
    let peo = perfect_elimination_order(g).ok_or(Error::NotChordal)?;
    let mut pos = vec![0; g.n()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut candidates: Vec<Vec<usize>> = peo
        .iter()
        .map(|&v| {
            let mut c: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in candidates {
        if !out.iter().any(|big| is_sorted_subset(&c, big)) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

/// Size of the largest clique of a chordal graph (0 for the empty graph).
pub fn clique_number(g: &UndirectedGraph) -> Result<usize> {
    Ok(maximal_cliques(g)?.iter().map(Vec::len).max().unwrap_or(0))
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_chordal_and_four_cycle_is_not() {
        let path = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(is_chordal(&path));
        let c4 = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_chordal(&c4));
        let c4_chord =
            UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_chordal(&c4_chord));
        assert_eq!(
            maximal_cliques(&c4_chord).unwrap(),
            vec![vec![0, 1, 2], vec![0, 2, 3]]
        );
        assert!(matches!(maximal_cliques(&c4), Err(Error::NotChordal)));
    }

    #[test]
    fn isolated_vertices_are_their_own_cliques() {
        let g = UndirectedGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(maximal_cliques(&g).unwrap(), vec![vec![0, 1], vec![2]]);
        assert_eq!(clique_number(&g).unwrap(), 2);
    }
}
