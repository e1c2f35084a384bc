#![allow(dead_code)]

use std::collections::BTreeSet;

use causal_subset::generate::generate_synthetic;
use causal_subset::orientation::{chain_components, covered_edges, oriented_subgraph, recover_interventions};
use causal_subset::stabbing::Interval;
use causal_subset::tree::RootedTree;
use causal_subset::{Dag, TargetEdges};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Arcs = BTreeSet<(usize, usize)>;

/// Random DAG over a random vertex order; usually has v-structures.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    Dag::new(n, arcs).unwrap()
}

/// Either a generated v-structure-free graph or a plain random DAG.
pub fn random_instance<R: Rng>(rng: &mut R, n_max: usize) -> Dag {
    let n = rng.gen_range(2..=n_max);
    let p = *[0.1, 0.3, 0.5].choose(rng).unwrap();
    if rng.gen_bool(0.5) {
        generate_synthetic(n, p, rng.gen()).unwrap()
    } else {
        random_dag(rng, n, p)
    }
}

/// Uniformly random subset of the edges, of uniformly random size.
pub fn random_targets<R: Rng>(rng: &mut R, g: &Dag) -> TargetEdges {
    let mut edges: Vec<(usize, usize)> = g.arcs().collect();
    edges.shuffle(rng);
    let size = rng.gen_range(0..=edges.len());
    edges.truncate(size);
    TargetEdges::new(g, edges).unwrap()
}

/// A few interventions, each a small nonempty vertex set.
pub fn random_interventions<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let count = rng.gen_range(0..=3);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(3));
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(rng);
            all.truncate(size);
            all.sort_unstable();
            all
        })
        .collect()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> RootedTree {
    let mut parents = vec![None; n];
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    for i in 1..n {
        parents[labels[i]] = Some(labels[rng.gen_range(0..i)]);
    }
    RootedTree::from_parents(parents).unwrap()
}

pub fn random_intervals<R: Rng>(rng: &mut R, tree: &RootedTree, count: usize) -> Vec<Interval> {
    (0..count)
        .map(|_| {
            let end = rng.gen_range(0..tree.n());
            let path = tree.path_to_root(end);
            Interval::new(path[rng.gen_range(0..path.len())], end)
        })
        .collect()
}

pub fn recovered(g: &Dag, interventions: &[Vec<usize>]) -> Arcs {
    recover_interventions(g, interventions).recovered
}

/// Checks the structural statements relating `R(G, .)`, oriented subgraphs
/// and chain components; returns one message per violation.
pub fn property_violations(g: &Dag, a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<String> {
    let mut bad = Vec::new();
    let ab: Vec<Vec<usize>> = a.iter().chain(b).cloned().collect();
    let ea = recover_interventions(g, a);
    let r_a = ea.recovered.clone();
    let r_b = recovered(g, b);
    let r_ab = recovered(g, &ab);
    let ga = oriented_subgraph(g, a);
    let gb = oriented_subgraph(g, b);
    let r_ga_b = recovered(&ga, b);
    let r_gb_a = recovered(&gb, a);

    if r_ab != &r_a | &r_b {
        bad.push("union".to_string());
    }

    let skel: BTreeSet<(usize, usize)> = ga.arcs().map(|(u, v)| (u.min(v), u.max(v))).collect();
    let und: BTreeSet<(usize, usize)> = ea.closure.undirected_edges().into_iter().collect();
    if skel != und {
        bad.push("skeleton of oriented subgraph vs chain components".to_string());
    }

    if !ga.v_structures().is_empty() {
        bad.push("oriented subgraph has a v-structure".to_string());
    }

    let comps = chain_components(&ea.closure);
    let mut comp_of = vec![0; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    for c in &comps {
        let parents = |v: usize| -> BTreeSet<usize> { ea.closure.directed_parents(v).collect() };
        if c.iter().any(|&v| parents(v) != parents(c[0])) {
            bad.push("recovered parents differ within a chain component".to_string());
        }
    }
    if r_a.iter().any(|&(u, v)| comp_of[u] == comp_of[v]) {
        bad.push("recovered arc inside a chain component".to_string());
    }

    if r_ga_b != &r_b - &r_a {
        bad.push("R(G^A, B) = R(G, B) minus R(G, A)".to_string());
    }

    if !r_ga_b.is_disjoint(&r_a) || r_ab != &r_ga_b | &r_a {
        bad.push("R(G, A+B) = R(G^A, B) disjoint-union R(G, A)".to_string());
    }

    let both = &r_a & &r_b;
    let disjoint = r_ga_b.is_disjoint(&r_gb_a) && r_ga_b.is_disjoint(&both) && r_gb_a.is_disjoint(&both);
    if !disjoint || r_ab != &(&r_ga_b | &r_gb_a) | &both {
        bad.push("three-way decomposition".to_string());
    }

    let obs = recovered(g, &[]);
    if covered_edges(g).iter().any(|(u, v)| obs.contains(&(u, v)) || obs.contains(&(v, u))) {
        bad.push("observational closure orients a covered edge".to_string());
    }

    for closure in [&ea.closure, &recover_interventions(g, &ab).closure] {
        if has_single_oriented_triangle(g, closure) {
            bad.push("triangle with exactly one oriented edge".to_string());
        }
    }
    bad
}

fn has_single_oriented_triangle(g: &Dag, p: &causal_subset::Pdag) -> bool {
    let n = g.n();
    let oriented = |x: usize, y: usize| !p.is_undirected(x, y);
    for u in 0..n {
        for v in u + 1..n {
            if !g.is_adjacent(u, v) {
                continue;
            }
            for w in v + 1..n {
                if g.is_adjacent(u, w) && g.is_adjacent(v, w) {
                    let count = [oriented(u, v), oriented(v, w), oriented(u, w)]
                        .iter()
                        .filter(|&&o| o)
                        .count();
                    if count == 1 {
                        return true;
                    }
                }
            }
        }
    }
    false
}
