//! Exhaustive reference solvers for small instances.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Dag, TargetEdges};
use crate::orientation::{recover_arcs, recover_interventions};
use crate::vertex_cover::next_combination;
use crate::verification::{CostParams, InterventionSet};

/// Caps enforced before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_k: usize,
}

impl OracleBudget {
    pub const fn atomic() -> Self {
        OracleBudget { max_n: 8, max_k: 1 }
    }

    pub const fn bounded() -> Self {
        OracleBudget { max_n: 7, max_k: 3 }
    }

    fn check(&self, n: usize, k: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::SizeLimit {
                what: "brute-force oracle vertices",
                limit: self.max_n,
                actual: n,
            });
        }
        if k > self.max_k {
            return Err(Error::SizeLimit {
                what: "brute-force oracle intervention size",
                limit: self.max_k,
                actual: k,
            });
        }
        Ok(())
    }
}

fn check_targets(g: &Dag, targets: &TargetEdges) -> Result<()> {
    match targets.iter().find(|&(u, v)| u >= g.n() || v >= g.n() || !g.is_adjacent(u, v)) {
        Some((u, v)) => Err(Error::NotAnEdge(u, v)),
        None => Ok(()),
    }
}

/// Smallest atomic verifying set, searching vertex subsets by size and then
/// lexicographically.
pub fn nu1_bruteforce(g: &Dag, targets: &TargetEdges, budget: &OracleBudget) -> Result<(usize, InterventionSet)> {
    budget.check(g.n(), 1)?;
    check_targets(g, targets)?;
    let n = g.n();
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let set = InterventionSet::atomic(combo.iter().copied());
            if recover_interventions(g, set.as_slice()).orients_all(targets) {
                return Ok((size, set));
            }
            if size == 0 || !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("intervening on every vertex separately orients all edges")
}

/// Every nonempty vertex subset of size at most `k`, by size then lexicographically.
fn small_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=k.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(combo.clone());
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    out
}

/// Shared machinery: an intervention's effect depends only on which edges it
/// cuts, so searches run over unions of cut-edge masks.
struct CutSpace<'a> {
    g: &'a Dag,
    targets: &'a TargetEdges,
    arcs: Vec<(usize, usize)>,
    subsets: Vec<Vec<usize>>,
    cuts: Vec<u64>,
    solved: HashMap<u64, bool>,
}

impl<'a> CutSpace<'a> {
    fn new(g: &'a Dag, targets: &'a TargetEdges, k: usize) -> Result<Self> {
        let arcs: Vec<(usize, usize)> = g.arcs().collect();
        if arcs.len() > 64 {
            return Err(Error::SizeLimit {
                what: "brute-force oracle edges",
                limit: 64,
                actual: arcs.len(),
            });
        }
        let subsets = small_subsets(g.n(), k);
        let cuts = subsets
            .iter()
            .map(|s| {
                let mut inside = vec![false; g.n()];
                for &v in s {
                    inside[v] = true;
                }
                arcs.iter()
                    .enumerate()
                    .filter(|&(_, &(u, v))| inside[u] != inside[v])
                    .fold(0u64, |m, (i, _)| m | (1 << i))
            })
            .collect();
        Ok(CutSpace {
            g,
            targets,
            arcs,
            subsets,
            cuts,
            solved: HashMap::new(),
        })
    }

    fn solves(&mut self, mask: u64) -> bool {
        if let Some(&b) = self.solved.get(&mask) {
            return b;
        }
        let seed: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let ok = recover_arcs(self.g, &seed)
            .expect("seed arcs come from the graph")
            .orients_all(self.targets);
        self.solved.insert(mask, ok);
        ok
    }
}

/// Minimum number of interventions of size at most `k` orienting `targets`.
///
/// Breadth-first search over reachable cut-edge masks, one level per
/// intervention, so the first level containing a solving mask is optimal.
pub fn nuk_bruteforce(g: &Dag, targets: &TargetEdges, k: usize, budget: &OracleBudget) -> Result<(usize, InterventionSet)> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    budget.check(g.n(), k)?;
    check_targets(g, targets)?;
    let mut space = CutSpace::new(g, targets, k)?;
    // mask -> (previous mask, subset index)
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut level = vec![0u64];
    let mut depth = 0;
    loop {
        if let Some(&goal) = level.iter().find(|&&m| space.solves(m)) {
            let mut chosen = Vec::new();
            let mut cur = goal;
            while cur != 0 {
                let (prev, idx) = parent[&cur];
                chosen.push(space.subsets[idx].clone());
                cur = prev;
            }
            chosen.reverse();
            return Ok((depth, InterventionSet::new(chosen, k)?));
        }
        let mut next = Vec::new();
        for &m in &level {
            for (idx, &c) in space.cuts.iter().enumerate() {
                let nm = m | c;
                if nm != 0 && nm != m && !parent.contains_key(&nm) {
                    parent.insert(nm, (m, idx));
                    next.push(nm);
                }
            }
        }
        if next.is_empty() {
            unreachable!("cutting every edge orients all targets");
        }
        next.sort_unstable();
        level = next;
        depth += 1;
    }
}

#[derive(PartialEq)]
struct Entry {
    cost: f64,
    order: usize,
    mask: u64,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.order.cmp(&self.order))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum of `alpha * w(I) + beta * |I|` over intervention sets with
/// interventions of size at most `k`, by Dijkstra over cut-edge masks.
pub fn cost_bruteforce(
    g: &Dag,
    targets: &TargetEdges,
    k: usize,
    params: &CostParams,
    budget: &OracleBudget,
) -> Result<(f64, InterventionSet)> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    budget.check(g.n(), k)?;
    check_targets(g, targets)?;
    if params.vertex_costs.len() != g.n() {
        return Err(Error::InvalidInput("one vertex cost per vertex required".into()));
    }
    let mut space = CutSpace::new(g, targets, k)?;
    let step: Vec<f64> = space
        .subsets
        .iter()
        .map(|s| params.alpha * s.iter().map(|&v| params.vertex_costs[v]).sum::<f64>() + params.beta)
        .collect();
    let mut best: HashMap<u64, f64> = HashMap::from([(0, 0.0)]);
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut heap = BinaryHeap::from([Entry {
        cost: 0.0,
        order: 0,
        mask: 0,
    }]);
    let mut order = 1;
    while let Some(Entry { cost, mask, .. }) = heap.pop() {
        if best.get(&mask).is_some_and(|&b| cost > b) {
            continue;
        }
        if space.solves(mask) {
            let mut chosen = Vec::new();
            let mut cur = mask;
            while cur != 0 {
                let (prev, idx) = parent[&cur];
                chosen.push(space.subsets[idx].clone());
                cur = prev;
            }
            chosen.reverse();
            return Ok((cost, InterventionSet::new(chosen, k)?));
        }
        for (idx, &c) in space.cuts.iter().enumerate() {
            let nm = mask | c;
            if nm == mask {
                continue;
            }
            let nc = cost + step[idx];
            if best.get(&nm).is_none_or(|&b| nc < b) {
                best.insert(nm, nc);
                parent.insert(nm, (mask, idx));
                heap.push(Entry {
                    cost: nc,
                    order,
                    mask: nm,
                });
                order += 1;
            }
        }
    }
    unreachable!("cutting every edge orients all targets")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_vertex() -> Dag {
        Dag::new(6, [(0, 4), (0, 5), (1, 2), (1, 3), (4, 1), (4, 2), (4, 3), (4, 5), (5, 2)]).unwrap()
    }

    #[test]
    fn empty_targets_cost_nothing() {
        let g = six_vertex();
        let (size, w) = nu1_bruteforce(&g, &TargetEdges::default(), &OracleBudget::atomic()).unwrap();
        assert_eq!((size, w.len()), (0, 0));
    }

    #[test]
    fn six_vertex_full_needs_two() {
        let g = six_vertex();
        let (size, w) = nu1_bruteforce(&g, &g.all_edges(), &OracleBudget::atomic()).unwrap();
        assert_eq!(size, 2);
        assert_eq!(w.vertices(), vec![1, 4]);
        let (k1, _) = nuk_bruteforce(&g, &g.all_edges(), 1, &OracleBudget::bounded()).unwrap();
        assert_eq!(k1, 2);
        let (k2, w2) = nuk_bruteforce(&g, &g.all_edges(), 2, &OracleBudget::bounded()).unwrap();
        assert_eq!(k2, 1);
        assert!(recover_interventions(&g, w2.as_slice()).orients_all(&g.all_edges()));
    }

    #[test]
    fn single_edge_needs_one_endpoint() {
        let g = Dag::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = TargetEdges::new(&g, [(1, 2)]).unwrap();
        let (size, w) = nu1_bruteforce(&g, &t, &OracleBudget::atomic()).unwrap();
        assert_eq!(size, 1);
        assert_eq!(w.vertices().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Dag::new(9, (0..8).map(|i| (i, i + 1))).unwrap();
        assert!(nu1_bruteforce(&g, &g.all_edges(), &OracleBudget::atomic()).unwrap_err().is_budget());
        let small = six_vertex();
        assert!(nuk_bruteforce(&small, &small.all_edges(), 4, &OracleBudget::bounded())
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn cost_oracle_matches_count_when_alpha_zero() {
        let g = six_vertex();
        let p = CostParams::unit(6, 0.0, 1.0).unwrap();
        let (c, _) = cost_bruteforce(&g, &g.all_edges(), 1, &p, &OracleBudget::bounded()).unwrap();
        assert_eq!(c, 2.0);
    }
}
