//! Exact minimum vertex cover by exhaustive search.

use crate::error::{Error, Result};
use crate::graph::TargetEdges;

/// Largest number of distinct endpoints accepted by [`min_vertex_cover`].
pub const MAX_COVER_ENDPOINTS: usize = 25;

/// Minimum-cardinality vertex cover, lexicographically least among ties.
///
/// Candidates are enumerated by size and then in lexicographic order, so the
/// first cover found is the answer.
pub fn min_vertex_cover(edges: &TargetEdges) -> Result<Vec<usize>> {
    let pts = edges.endpoints();
    if pts.len() > MAX_COVER_ENDPOINTS {
        return Err(Error::SizeLimit {
            what: "min_vertex_cover endpoints",
            limit: MAX_COVER_ENDPOINTS,
            actual: pts.len(),
        });
    }
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let index = |v: usize| pts.binary_search(&v).expect("endpoint listed");
    let masks: Vec<u32> = edges
        .iter()
        .map(|(u, v)| (1u32 << index(u)) | (1u32 << index(v)))
        .collect();
    let m = pts.len();
    for size in 1..=m {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let chosen = combo.iter().fold(0u32, |acc, &i| acc | (1 << i));
            if masks.iter().all(|&e| e & chosen != 0) {
                return Ok(combo.iter().map(|&i| pts[i]).collect());
            }
            if !next_combination(&mut combo, m) {
                break;
            }
        }
    }
    unreachable!("the full endpoint set is always a cover")
}

/// Advance to the next `k`-combination of `0..m` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < m - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_covers() {
        assert!(min_vertex_cover(&TargetEdges::default()).unwrap().is_empty());
        assert_eq!(min_vertex_cover(&TargetEdges::from_pairs([(1, 0)])).unwrap(), vec![0]);
        let star = TargetEdges::from_pairs([(3, 0), (3, 1), (3, 2)]);
        assert_eq!(min_vertex_cover(&star).unwrap(), vec![3]);
    }

    #[test]
    fn matching_needs_one_per_edge() {
        for n in 1..=6 {
            let t = TargetEdges::from_pairs((0..n).map(|i| (i, n + i)));
            assert_eq!(min_vertex_cover(&t).unwrap(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn too_many_endpoints() {
        let t = TargetEdges::from_pairs((0..13).map(|i| (2 * i, 2 * i + 1)));
        assert!(min_vertex_cover(&t).unwrap_err().is_budget());
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![2, 3]);
    }
}
