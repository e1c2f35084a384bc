//! Meek-rule closure and the family of recovered arc sets `R(G, ·)`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Dag, Pdag, TargetEdges, UndirectedGraph};

/// A closed partially directed graph together with its oriented arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationResult {
    pub closure: Pdag,
    pub recovered: BTreeSet<(usize, usize)>,
}

impl OrientationResult {
    fn from_closure(closure: Pdag) -> Self {
        let recovered = closure.directed_arcs().into_iter().collect();
        OrientationResult { closure, recovered }
    }

    /// True when both orientations of every target edge are known.
    pub fn orients_all(&self, targets: &TargetEdges) -> bool {
        targets
            .iter()
            .all(|(u, v)| !self.closure.is_undirected(u, v))
    }
}

/// Apply Meek rules R1-R4 until none fires.
pub fn meek_closure(p: &Pdag) -> Pdag {
    let mut out = p.clone();
    meek_close_in_place(&mut out);
    out
}

/// In-place variant of [`meek_closure`].
pub fn meek_close_in_place(p: &mut Pdag) {
    let n = p.n();
    let mut queued = vec![false; n * n];
    let mut queue: VecDeque<(usize, usize)> = p.undirected_edges().into();
    for &(u, v) in &queue {
        queued[u * n + v] = true;
    }
    let push = |queue: &mut VecDeque<(usize, usize)>, queued: &mut [bool], x: usize, y: usize| {
        let (u, v) = (x.min(y), x.max(y));
        if !queued[u * n + v] {
            queued[u * n + v] = true;
            queue.push_back((u, v));
        }
    };
    while let Some((x, y)) = queue.pop_front() {
        queued[x * n + y] = false;
        if !p.is_undirected(x, y) {
            continue;
        }
        let (a, b) = if rule_fires(p, x, y) {
            (x, y)
        } else if rule_fires(p, y, x) {
            (y, x)
        } else {
            continue;
        };
        p.orient(a, b);
        // A new arc a -> b can only enable rules on edges at a or b, or on
        // edges a' - b' with a' - a undirected and b -> b' (R4).
        for end in [a, b] {
            for z in p.undirected_neighbors(end).collect::<Vec<_>>() {
                push(&mut queue, &mut queued, end, z);
            }
        }
        let children: Vec<usize> = p.directed_children(b).collect();
        for a2 in p.undirected_neighbors(a).collect::<Vec<_>>() {
            if !p.is_adjacent(a2, b) {
                continue;
            }
            for &b2 in &children {
                if p.is_undirected(a2, b2) {
                    push(&mut queue, &mut queued, a2, b2);
                }
            }
        }
    }
    debug_assert!(!p.has_directed_cycle(), "Meek closure produced a directed cycle");
}

/// Whether some rule orients the undirected edge `a - b` as `a -> b`.
fn rule_fires(p: &Pdag, a: usize, b: usize) -> bool {
    // R1: c -> a - b, c and b non-adjacent.
    if p.directed_parents(a).any(|c| !p.is_adjacent(c, b)) {
        return true;
    }
    // R2: a -> c -> b.
    if p.directed_children(a).any(|c| p.has_arc(c, b)) {
        return true;
    }
    // R3: a - c -> b <- d - a, c and d non-adjacent.
    let mids: Vec<usize> = p.directed_parents(b).filter(|&c| p.is_undirected(a, c)).collect();
    for (i, &c) in mids.iter().enumerate() {
        if mids[i + 1..].iter().any(|&d| !p.is_adjacent(c, d)) {
            return true;
        }
    }
    // R4: a - d -> c -> b, a adjacent to c, d and b non-adjacent.
    p.undirected_neighbors(a)
        .filter(|&d| d != b && !p.is_adjacent(d, b))
        .any(|d| p.directed_children(d).any(|c| p.has_arc(c, b) && p.is_adjacent(a, c)))
}

/// Skeleton of `g` with its v-structure arcs oriented.
fn v_structure_seed(g: &Dag) -> Pdag {
    let mut p = Pdag::undirected_skeleton(g);
    for (u, v, w) in g.v_structures() {
        p.orient(u, v);
        p.orient(w, v);
    }
    p
}

/// Observational essential graph `E(G)`; `recovered` is `R(G, ∅)`.
pub fn essential_graph(g: &Dag) -> OrientationResult {
    let mut p = v_structure_seed(g);
    meek_close_in_place(&mut p);
    OrientationResult::from_closure(p)
}

/// Interventional essential graph: every edge cut by some intervention is
/// oriented as in `g`, together with the v-structures, and then closed.
pub fn recover_interventions<S: AsRef<[usize]>>(g: &Dag, interventions: &[S]) -> OrientationResult {
    let mut p = v_structure_seed(g);
    let mut inside = vec![false; g.n()];
    for s in interventions {
        let s = s.as_ref();
        for &v in s {
            inside[v] = true;
        }
        for (u, v) in g.arcs() {
            if inside[u] != inside[v] {
                p.orient(u, v);
            }
        }
        for &v in s {
            inside[v] = false;
        }
    }
    meek_close_in_place(&mut p);
    OrientationResult::from_closure(p)
}

/// `R(G, S)` for a set of seed arcs, each of which must be an arc of `g`.
pub fn recover_arcs(g: &Dag, seed: &[(usize, usize)]) -> Result<OrientationResult> {
    let mut p = v_structure_seed(g);
    for &(u, v) in seed {
        if u >= g.n() || v >= g.n() || !g.has_arc(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        p.orient(u, v);
    }
    meek_close_in_place(&mut p);
    Ok(OrientationResult::from_closure(p))
}

/// Connected components of the undirected part (singletons included).
pub fn chain_components(p: &Pdag) -> Vec<Vec<usize>> {
    p.undirected_part().components()
}

/// Undirected graph induced on one chain component, relabelled to local ids.
pub fn component_graph(p: &Pdag, component: &[usize]) -> UndirectedGraph {
    let mut local = vec![usize::MAX; p.n()];
    for (i, &v) in component.iter().enumerate() {
        local[v] = i;
    }
    let edges = component.iter().enumerate().flat_map(|(i, &u)| {
        let local = &local;
        p.undirected_neighbors(u)
            .filter(move |&w| local[w] != usize::MAX && local[w] > i)
            .map(move |w| (i, local[w]))
            .collect::<Vec<_>>()
    });
    UndirectedGraph::from_edges(component.len(), edges).expect("local ids in range")
}

/// Edges `u -> v` with `Pa(v) \ {u} = Pa(u)`.
pub fn covered_edges(g: &Dag) -> TargetEdges {
    g.arcs()
        .filter(|&(u, v)| {
            let pv: Vec<usize> = g.parents(v).iter().copied().filter(|&x| x != u).collect();
            pv == g.parents(u)
        })
        .collect()
}

/// `G^I`: the arcs of `g` not recovered by `interventions`.
pub fn oriented_subgraph<S: AsRef<[usize]>>(g: &Dag, interventions: &[S]) -> Dag {
    let r = recover_interventions(g, interventions);
    g.filter_arcs(|u, v| !r.closure.has_arc(u, v))
}

/// `R(G, {z})` for every vertex `z`, computed once.
#[derive(Clone, Debug)]
pub struct SingletonClosures {
    n: usize,
    oriented: Vec<bool>,
}

impl SingletonClosures {
    pub fn new(g: &Dag) -> Self {
        let n = g.n();
        let mut oriented = vec![false; n * n * n];
        for z in 0..n {
            let r = recover_interventions(g, &[[z]]);
            for &(u, v) in &r.recovered {
                oriented[(z * n + u) * n + v] = true;
            }
        }
        SingletonClosures { n, oriented }
    }

    /// True when intervening on `z` alone orients `u -> v`.
    pub fn orients(&self, z: usize, u: usize, v: usize) -> bool {
        self.oriented[(z * self.n + u) * self.n + v]
    }

    /// `R^{-1}_1(u -> v)`: every single vertex whose intervention orients the arc.
    pub fn orienting_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&z| self.orients(z, u, v)).collect()
    }
}
