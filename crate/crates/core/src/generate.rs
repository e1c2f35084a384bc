//! Synthetic instance generation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Dag, TargetEdges};

/// Random connected v-structure-free DAG.
///
/// A uniform labelled tree (decoded from a random Prüfer sequence) is merged
/// with an Erdős–Rényi `G(n, p)` graph, every edge is oriented from the
/// smaller id to the larger, and then for each v-structure `u -> v <- w` the
/// arc `u -> w` is added until none remain. The tree is drawn before the ER
/// pairs from a single ChaCha8 stream seeded by `seed`.
pub fn generate_synthetic(n: usize, p: f64, seed: u64) -> Result<Dag> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("edge probability {p} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![false; n * n];
    let add = |adj: &mut Vec<bool>, u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        adj[a * n + b] = true;
    };

    for (u, v) in random_tree(n, &mut rng) {
        add(&mut adj, u, v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                add(&mut adj, u, v);
            }
        }
    }

    // Arcs always point from smaller to larger id, so the graph stays acyclic.
    loop {
        let mut added = Vec::new();
        for v in 0..n {
            let parents: Vec<usize> = (0..v).filter(|&u| adj[u * n + v]).collect();
            for (i, &u) in parents.iter().enumerate() {
                for &w in &parents[i + 1..] {
                    if !adj[u * n + w] {
                        added.push((u, w));
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for (u, w) in added {
            adj[u * n + w] = true;
        }
    }

    let arcs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Dag::new(n, arcs.filter(|&(u, v)| adj[u * n + v]).collect::<Vec<_>>())
}

/// Uniform random labelled tree on `n` vertices as undirected edges.
fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

/// Decode a Prüfer sequence of length `n - 2`.
pub(crate) fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Clique on `0..n` oriented by id, plus pendant arcs `i -> n + i`.
/// The targets are the `n` pendant edges.
pub fn lower_bound_instance(n: usize) -> Result<(Dag, TargetEdges)> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            arcs.push((u, v));
        }
    }
    let pendants: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
    arcs.extend(pendants.iter().copied());
    let g = Dag::new(2 * n, arcs)?;
    let t = TargetEdges::new(&g, pendants)?;
    Ok((g, t))
}
