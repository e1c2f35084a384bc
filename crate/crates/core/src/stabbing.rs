//! Minimum-cost interval stabbing on a rooted tree.
//!
//! An interval `[a, b]` is the tree path from `a` down to its descendant `b`
//! (both inclusive). A vertex set stabs the interval if it contains a vertex
//! of that path. [`solve`] runs the Euler-tour indexed dynamic program in
//! `O(n · |J|)` states; [`solve_bruteforce`] enumerates subsets.

use crate::error::{Error, Result};
use crate::tree::RootedTree;

/// Largest tree accepted by [`solve_bruteforce`].
pub const BRUTEFORCE_MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }
}

/// Depth-first visit sequence with first and last occurrence indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTour {
    pub tau: Vec<usize>,
    pub first: Vec<usize>,
    pub last: Vec<usize>,
}

impl EulerTour {
    /// Children are visited in ascending id order and the parent is recorded
    /// again after each child's subtree, so `tau.len() == 2n - 1`.
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.n();
        let mut tau = Vec::with_capacity(2 * n - 1);
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        let root = tree.root();
        first[root] = 0;
        tau.push(root);
        // (vertex, next child position)
        let mut stack = vec![(root, 0usize)];
        while let Some((v, next)) = stack.last_mut() {
            let children = tree.children(*v);
            if *next < children.len() {
                let c = children[*next];
                *next += 1;
                first[c] = tau.len();
                last[c] = tau.len();
                tau.push(c);
                stack.push((c, 0));
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    last[p] = tau.len();
                    tau.push(p);
                }
            }
        }
        EulerTour { tau, first, last }
    }

    /// `a` is an ancestor of `b` (inclusive).
    #[inline]
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.first[a] <= self.first[b] && self.last[b] <= self.last[a]
    }

    /// `v` lies on the path of `iv`.
    #[inline]
    pub fn stabs(&self, v: usize, iv: Interval) -> bool {
        self.is_ancestor(iv.start, v) && self.is_ancestor(v, iv.end)
    }
}

/// Drop every interval that contains another (as vertex sets on the tree),
/// collapsing duplicates. Survivors keep their input order.
pub fn prune_supersets(tour: &EulerTour, intervals: &[Interval]) -> Vec<Interval> {
    let mut uniq: Vec<Interval> = Vec::with_capacity(intervals.len());
    for &iv in intervals {
        if !uniq.contains(&iv) {
            uniq.push(iv);
        }
    }
    let contains = |outer: Interval, inner: Interval| {
        tour.is_ancestor(outer.start, inner.start) && tour.is_ancestor(inner.end, outer.end)
    };
    uniq.iter()
        .copied()
        .filter(|&c| !uniq.iter().any(|&a| a != c && contains(c, a)))
        .collect()
}

/// Sort by the order `[a,b] < [c,d]` iff `f(a) < f(c)`, or `a = c` and `l(b) > l(d)`.
pub fn sort_by_tour(tour: &EulerTour, intervals: &mut [Interval]) {
    intervals.sort_by(|x, y| {
        tour.first[x.start]
            .cmp(&tour.first[y.start])
            .then_with(|| tour.last[y.end].cmp(&tour.last[x.end]))
    });
}

fn validate(tree: &RootedTree, tour: &EulerTour, intervals: &[Interval], costs: &[f64]) -> Result<()> {
    let n = tree.n();
    if costs.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} vertex costs, got {}",
            costs.len()
        )));
    }
    if let Some(c) = costs.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::InvalidInput(format!("vertex cost {c} must be finite and nonnegative")));
    }
    for iv in intervals {
        for x in [iv.start, iv.end] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if !tour.is_ancestor(iv.start, iv.end) {
            return Err(Error::InvalidInput(format!(
                "[{}, {}] is not an interval: start is not an ancestor of end",
                iv.start, iv.end
            )));
        }
    }
    Ok(())
}

/// A validated instance with intervals pruned, sorted and indexed for the DP.
#[derive(Clone, Debug)]
pub struct PreparedInstance {
    tree: RootedTree,
    tour: EulerTour,
    original: Vec<Interval>,
    intervals: Vec<Interval>,
    costs: Vec<f64>,
    /// Index of the interval ending at `v`, if any.
    end_index: Vec<Option<usize>>,
    /// Smallest index of an interval starting inside `T_y` (`|J|` if none).
    back_index: Vec<usize>,
    /// Smallest index of an interval ending inside `T_y` (`|J|` if none).
    /// Each child has one parent, so this is keyed by the child alone.
    child_index: Vec<usize>,
}

impl PreparedInstance {
    /// `costs = None` means unit costs.
    pub fn new(tree: RootedTree, intervals: &[Interval], costs: Option<Vec<f64>>) -> Result<Self> {
        let tour = EulerTour::new(&tree);
        let costs = costs.unwrap_or_else(|| vec![1.0; tree.n()]);
        validate(&tree, &tour, intervals, &costs)?;
        let mut pruned = prune_supersets(&tour, intervals);
        sort_by_tour(&tour, &mut pruned);
        let n = tree.n();
        let j = pruned.len();
        let mut end_index = vec![None; n];
        let mut back_index = vec![j; n];
        let mut child_index = vec![j; n];
        for (idx, iv) in pruned.iter().enumerate() {
            assert!(
                end_index[iv.end].replace(idx).is_none(),
                "pruned intervals have distinct ending vertices"
            );
        }
        for y in 0..n {
            back_index[y] = pruned
                .iter()
                .position(|iv| tour.is_ancestor(y, iv.start))
                .unwrap_or(j);
            child_index[y] = pruned
                .iter()
                .position(|iv| tour.is_ancestor(y, iv.end))
                .unwrap_or(j);
        }
        Ok(PreparedInstance {
            tree,
            tour,
            original: intervals.to_vec(),
            intervals: pruned,
            costs,
            end_index,
            back_index,
            child_index,
        })
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn tour(&self) -> &EulerTour {
        &self.tour
    }

    /// Pruned intervals in DP order.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn original_intervals(&self) -> &[Interval] {
        &self.original
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn end_index(&self, v: usize) -> Option<usize> {
        self.end_index[v]
    }

    pub fn back_index(&self, y: usize) -> usize {
        self.back_index[y]
    }

    pub fn child_index(&self, y: usize) -> usize {
        self.child_index[y]
    }
}

/// Optimal cost and a stabbing set achieving it (sorted).
#[derive(Clone, Debug, PartialEq)]
pub struct StabSolution {
    pub cost: f64,
    pub stab: Vec<usize>,
}

struct Dp<'a> {
    prep: &'a PreparedInstance,
    width: usize,
    memo: Vec<f64>,
}

impl Dp<'_> {
    fn value(&mut self, v: usize, i: usize) -> f64 {
        let j = self.width - 1;
        if i == j {
            return 0.0;
        }
        let slot = v * self.width + i;
        if !self.memo[slot].is_nan() {
            return self.memo[slot];
        }
        let (alpha, beta) = self.branches(v, i);
        let forced = self.prep.end_index[v].is_some_and(|e| e >= i);
        let out = if forced { alpha } else { alpha.min(beta) };
        self.memo[slot] = out;
        out
    }

    /// Costs of taking `v` and of skipping it.
    fn branches(&mut self, v: usize, i: usize) -> (f64, f64) {
        let prep = self.prep;
        let mut alpha = prep.costs[v];
        let mut beta = 0.0;
        for &y in prep.tree.children(v) {
            alpha += self.value(y, prep.back_index[y].max(i));
            beta += self.value(y, prep.child_index[y].max(i));
        }
        (alpha, beta)
    }

    fn backtrace(&mut self, v: usize, i: usize, out: &mut Vec<usize>) {
        let mut stack = vec![(v, i)];
        let j = self.width - 1;
        while let Some((v, i)) = stack.pop() {
            if i == j {
                continue;
            }
            let (alpha, beta) = self.branches(v, i);
            let forced = self.prep.end_index[v].is_some_and(|e| e >= i);
            let take = forced || alpha < beta;
            if take {
                out.push(v);
            }
            for &y in self.prep.tree.children(v) {
                let next = if take {
                    self.prep.back_index[y]
                } else {
                    self.prep.child_index[y]
                };
                stack.push((y, next.max(i)));
            }
        }
    }
}

/// Exact minimum-cost stabbing set. Ties between taking and skipping a
/// vertex are resolved by skipping it.
pub fn solve(prep: &PreparedInstance) -> StabSolution {
    let width = prep.intervals.len() + 1;
    let mut dp = Dp {
        prep,
        width,
        memo: vec![f64::NAN; prep.tree.n() * width],
    };
    let root = prep.tree.root();
    let cost = dp.value(root, 0);
    let mut stab = Vec::new();
    dp.backtrace(root, 0, &mut stab);
    stab.sort_unstable();
    debug_assert!(prep
        .original
        .iter()
        .all(|&iv| stab.iter().any(|&v| prep.tour.stabs(v, iv))));
    StabSolution { cost, stab }
}

/// Exhaustive minimum over all vertex subsets; ties go to the subset with
/// the smallest bitmask.
pub fn solve_bruteforce(tree: &RootedTree, intervals: &[Interval], costs: Option<&[f64]>) -> Result<StabSolution> {
    let n = tree.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::SizeLimit {
            what: "solve_bruteforce vertices",
            limit: BRUTEFORCE_MAX_N,
            actual: n,
        });
    }
    let tour = EulerTour::new(tree);
    let unit = vec![1.0; n];
    let costs = costs.unwrap_or(&unit);
    validate(tree, &tour, intervals, costs)?;
    let masks: Vec<u32> = intervals
        .iter()
        .map(|&iv| (0..n).filter(|&v| tour.stabs(v, iv)).fold(0, |m, v| m | (1 << v)))
        .collect();
    let mut best: Option<(f64, u32)> = None;
    for set in 0u32..(1u32 << n) {
        if masks.iter().any(|&m| m & set == 0) {
            continue;
        }
        let cost: f64 = (0..n).filter(|&v| set >> v & 1 == 1).map(|v| costs[v]).sum();
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, set));
        }
    }
    let (cost, set) = best.expect("the full vertex set stabs every interval");
    Ok(StabSolution {
        cost,
        stab: (0..n).filter(|&v| set >> v & 1 == 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // a..j = 0..9
    fn ten_tree() -> RootedTree {
        RootedTree::from_edges(
            10,
            0,
            &[(1, 0), (2, 0), (3, 0), (4, 1), (5, 1), (6, 2), (7, 3), (8, 7), (9, 7)],
        )
        .unwrap()
    }

    fn ten_intervals() -> Vec<Interval> {
        [(0, 1), (0, 4), (0, 7), (0, 8), (2, 6), (3, 9)]
            .iter()
            .map(|&(a, b)| Interval::new(a, b))
            .collect()
    }

    #[test]
    fn euler_tour_matches_table() {
        let tour = EulerTour::new(&ten_tree());
        assert_eq!(tour.tau, vec![0, 1, 4, 1, 5, 1, 0, 2, 6, 2, 0, 3, 7, 8, 7, 9, 7, 3, 0]);
        let one_based = |v: usize| (tour.first[v] + 1, tour.last[v] + 1);
        assert_eq!(one_based(0), (1, 19));
        assert_eq!(one_based(3), (12, 18));
        assert_eq!(one_based(4), (3, 3));
        let single = RootedTree::from_parents(vec![None]).unwrap();
        let t = EulerTour::new(&single);
        assert_eq!((t.tau.clone(), t.first[0], t.last[0]), (vec![0], 0, 0));
    }

    #[test]
    fn prec_order_of_ten_vertex_instance() {
        let tour = EulerTour::new(&ten_tree());
        let mut ivs = ten_intervals();
        sort_by_tour(&tour, &mut ivs);
        let pairs: Vec<(usize, usize)> = ivs.iter().map(|iv| (iv.start, iv.end)).collect();
        assert_eq!(pairs, vec![(0, 7), (0, 8), (0, 1), (0, 4), (2, 6), (3, 9)]);
    }

    #[test]
    fn pruning_drops_supersets_and_duplicates() {
        let tour = EulerTour::new(&ten_tree());
        let pruned = prune_supersets(&tour, &ten_intervals());
        assert!(!pruned.contains(&Interval::new(0, 4)));
        assert!(!pruned.contains(&Interval::new(0, 8)));
        assert_eq!(pruned.len(), 4);
        let dup = prune_supersets(&tour, &[Interval::new(2, 6), Interval::new(2, 6)]);
        assert_eq!(dup, vec![Interval::new(2, 6)]);
    }

    #[test]
    fn ten_vertex_instance_optimum_is_three() {
        let prep = PreparedInstance::new(ten_tree(), &ten_intervals(), None).unwrap();
        let sol = solve(&prep);
        assert_eq!(sol.cost, 3.0);
        assert_eq!(sol.stab.len(), 3);
        assert_eq!(solve_bruteforce(&ten_tree(), &ten_intervals(), None).unwrap().cost, 3.0);
        let tour = prep.tour();
        for set in [[0, 2, 3], [1, 6, 7]] {
            assert!(ten_intervals().iter().all(|&iv| set.iter().any(|&v| tour.stabs(v, iv))));
        }
    }

    #[test]
    fn line_example_optimum_is_two() {
        // v1..v8 = 0..7
        let tree = RootedTree::from_edges(8, 0, &(1..8).map(|v| (v, v - 1)).collect::<Vec<_>>()).unwrap();
        let ivs: Vec<Interval> = [(0, 5), (1, 3), (1, 4), (3, 6), (6, 7)]
            .iter()
            .map(|&(a, b)| Interval::new(a, b))
            .collect();
        let prep = PreparedInstance::new(tree.clone(), &ivs, None).unwrap();
        assert_eq!(solve(&prep).cost, 2.0);
        assert_eq!(solve_bruteforce(&tree, &ivs, None).unwrap().cost, 2.0);
    }

    #[test]
    fn empty_instance() {
        let prep = PreparedInstance::new(ten_tree(), &[], None).unwrap();
        assert_eq!(solve(&prep), StabSolution { cost: 0.0, stab: vec![] });
    }

    #[test]
    fn single_interval_takes_cheapest_path_vertex() {
        let costs = vec![5.0, 4.0, 1.0, 2.0, 0.5, 1.0, 3.0, 9.0, 1.0, 1.0];
        let ivs = [Interval::new(0, 8)];
        let prep = PreparedInstance::new(ten_tree(), &ivs, Some(costs.clone())).unwrap();
        let sol = solve(&prep);
        assert_eq!(sol, StabSolution { cost: 1.0, stab: vec![8] });
        assert_eq!(solve_bruteforce(&ten_tree(), &ivs, Some(&costs)).unwrap(), sol);
    }

    #[test]
    fn rejects_non_intervals_and_bad_costs() {
        assert!(PreparedInstance::new(ten_tree(), &[Interval::new(1, 6)], None).is_err());
        assert!(PreparedInstance::new(ten_tree(), &[], Some(vec![1.0; 3])).is_err());
        assert!(PreparedInstance::new(ten_tree(), &[], Some(vec![-1.0; 10])).is_err());
    }
}
