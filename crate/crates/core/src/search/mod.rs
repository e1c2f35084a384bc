//! Adaptive search: interventions are chosen one round at a time against an
//! oracle that answers with the edges each intervention orients.

pub mod adversary;
pub mod labelling;
pub mod separator;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Dag, Pdag, TargetEdges};
use crate::orientation::{chain_components, component_graph, essential_graph, meek_close_in_place};

pub use adversary::{adaptive_adversary_session, AdversaryOracle, AdversaryReport, SearchAlgorithm};
pub use labelling::bounded_labelled_groups;
pub use separator::{is_half_separator, weighted_clique_separator};

/// Something that can be intervened on.
pub trait InterventionOracle {
    fn num_vertices(&self) -> usize;

    /// The interventional essential graph given every answer so far.
    fn current(&self) -> &Pdag;

    /// Perform one intervention and return the arcs it newly orients.
    fn intervene(&mut self, set: &[usize]) -> Result<Vec<(usize, usize)>>;
}

pub(crate) fn check_intervention(set: &[usize], n: usize) -> Result<()> {
    if set.is_empty() {
        return Err(Error::Protocol("empty intervention".into()));
    }
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(Error::Protocol(format!("vertex {v} out of range for {n} vertices")));
    }
    Ok(())
}

/// Orient `arcs` where still undirected, close, and report what changed.
pub(crate) fn apply_arcs(p: &mut Pdag, arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let before = p.clone();
    for &(u, v) in arcs {
        p.orient(u, v);
    }
    meek_close_in_place(p);
    p.directed_arcs()
        .into_iter()
        .filter(|&(u, v)| !before.has_arc(u, v))
        .collect()
}

/// Answers truthfully from a fixed hidden DAG.
#[derive(Clone, Debug)]
pub struct HonestOracle {
    truth: Dag,
    current: Pdag,
    history: Vec<Vec<usize>>,
}

impl HonestOracle {
    pub fn new(truth: Dag) -> Self {
        let current = essential_graph(&truth).closure;
        HonestOracle {
            truth,
            current,
            history: Vec::new(),
        }
    }

    pub fn history(&self) -> &[Vec<usize>] {
        &self.history
    }

    pub fn truth(&self) -> &Dag {
        &self.truth
    }
}

impl InterventionOracle for HonestOracle {
    fn num_vertices(&self) -> usize {
        self.truth.n()
    }

    fn current(&self) -> &Pdag {
        &self.current
    }

    fn intervene(&mut self, set: &[usize]) -> Result<Vec<(usize, usize)>> {
        check_intervention(set, self.truth.n())?;
        let mut inside = vec![false; self.truth.n()];
        for &v in set {
            inside[v] = true;
        }
        let cut: Vec<(usize, usize)> = self
            .truth
            .arcs()
            .filter(|&(u, v)| inside[u] != inside[v])
            .collect();
        self.history.push(set.to_vec());
        Ok(apply_arcs(&mut self.current, &cut))
    }
}

/// One intervention and its effect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStep {
    pub round: usize,
    pub intervention: Vec<usize>,
    pub newly_oriented: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTranscript {
    pub steps: Vec<SearchStep>,
    pub rounds: usize,
    pub final_graph: Pdag,
}

impl SearchTranscript {
    pub fn total_interventions(&self) -> usize {
        self.steps.len()
    }

    /// Interventions used in each round, indexed from round 1.
    pub fn per_round(&self) -> Vec<usize> {
        let mut out = vec![0; self.rounds];
        for s in &self.steps {
            out[s.round - 1] += 1;
        }
        out
    }
}

/// Vertices of `h` incident to an undirected edge of the subgraph induced by `h`.
pub fn relevant_nodes(p: &Pdag, h: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; p.n()];
    for &v in h {
        inside[v] = true;
    }
    let mut out: Vec<usize> = h
        .iter()
        .copied()
        .filter(|&v| p.undirected_neighbors(v).any(|w| inside[w]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Fully orient the subgraph induced by `h`.
///
/// Each round, every chain component holding at least two relevant nodes
/// gets a 1/2-clique separator weighted uniformly on its relevant nodes; the
/// union of separators is intervened on atomically, or through labelled
/// groups of at most `k` vertices when `k > 1`.
pub fn subset_search<O: InterventionOracle + ?Sized>(oracle: &mut O, h: &[usize], k: usize) -> Result<SearchTranscript> {
    subset_search_until(oracle, h, k, None)
}

/// [`subset_search`], stopping right after any intervention that leaves
/// every edge of `stop` oriented. Without `stop`, the search ends as soon as
/// the subgraph induced by `h` is fully oriented, even mid-round.
pub fn subset_search_until<O: InterventionOracle + ?Sized>(
    oracle: &mut O,
    h: &[usize],
    k: usize,
    stop: Option<&TargetEdges>,
) -> Result<SearchTranscript> {
    let n = oracle.num_vertices();
    if h.is_empty() {
        return Err(Error::InvalidInput("node set H must be nonempty".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if let Some(&v) = h.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    // Checked after every intervention, not only between rounds.
    let done = |p: &Pdag| match stop {
        Some(t) => t.iter().all(|(u, v)| !p.is_undirected(u, v)),
        None => relevant_nodes(p, h).is_empty(),
    };
    let mut steps = Vec::new();
    let mut round = 0;
    loop {
        let p = oracle.current().clone();
        if done(&p) {
            break;
        }
        let rho = relevant_nodes(&p, h);
        if rho.is_empty() {
            break;
        }
        round += 1;
        let mut relevant = vec![false; n];
        for &v in &rho {
            relevant[v] = true;
        }
        let mut q = Vec::new();
        for comp in chain_components(&p) {
            if comp.iter().filter(|&&v| relevant[v]).count() < 2 {
                continue;
            }
            let sub = component_graph(&p, &comp);
            let weights: Vec<u64> = comp.iter().map(|&v| u64::from(relevant[v])).collect();
            let sep = weighted_clique_separator(&sub, &weights)?;
            q.extend(sep.into_iter().map(|x| comp[x]));
        }
        q.sort_unstable();
        let groups: Vec<Vec<usize>> = if k == 1 || q.len() == 1 {
            q.iter().map(|&v| vec![v]).collect()
        } else {
            bounded_labelled_groups(&q, k, n)?
        };
        for set in groups {
            // Earlier interventions this round may have oriented every edge
            // at these vertices already, making the intervention a no-op.
            let p = oracle.current();
            if set.iter().all(|&v| p.undirected_neighbors(v).next().is_none()) {
                continue;
            }
            let newly = oracle.intervene(&set)?;
            steps.push(SearchStep {
                round,
                intervention: set,
                newly_oriented: newly,
            });
            if done(oracle.current()) {
                break;
            }
        }
    }
    Ok(SearchTranscript {
        steps,
        rounds: round,
        final_graph: oracle.current().clone(),
    })
}

/// Vertices whose set of incident undirected edges is not strictly contained
/// in another vertex's set.
fn non_dominated(p: &Pdag, candidates: &[usize]) -> Vec<usize> {
    let n = p.n();
    let sets: Vec<Vec<usize>> = (0..n).map(|v| p.undirected_neighbors(v).collect()).collect();
    let covers = |x: usize, y: usize| {
        // Edges at x, each written as its other endpoint, all appear at y.
        sets[x].iter().all(|&w| w == y || sets[y].contains(&w)) && sets[x].contains(&y)
    };
    candidates
        .iter()
        .copied()
        .filter(|&x| {
            !(0..n).any(|y| y != x && covers(x, y) && sets[y].len() > sets[x].len())
        })
        .collect()
}

/// Intervene on uniformly random non-dominated vertices incident to an
/// unoriented target edge until every target is oriented.
///
/// A vertex is dominated when some neighbor's undirected edges strictly
/// include all of its own, so intervening on the neighbor cuts more.
pub fn random_search_baseline<O: InterventionOracle + ?Sized>(
    oracle: &mut O,
    targets: &TargetEdges,
    seed: u64,
) -> Result<SearchTranscript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::new();
    loop {
        let p = oracle.current();
        let mut candidates: Vec<usize> = targets
            .iter()
            .filter(|&(u, v)| p.is_undirected(u, v))
            .flat_map(|(u, v)| [u, v])
            .collect();
        if candidates.is_empty() {
            break;
        }
        candidates.sort_unstable();
        candidates.dedup();
        let pool = non_dominated(p, &candidates);
        let pool = if pool.is_empty() { candidates } else { pool };
        let v = *pool.choose(&mut rng).expect("pool is nonempty");
        let newly = oracle.intervene(&[v])?;
        steps.push(SearchStep {
            round: steps.len() + 1,
            intervention: vec![v],
            newly_oriented: newly,
        });
    }
    Ok(SearchTranscript {
        rounds: steps.len(),
        steps,
        final_graph: oracle.current().clone(),
    })
}

/// Vertices within skeleton distance `r` of `v` (inclusive), sorted.
pub fn r_hop_neighborhood(g: &Dag, v: usize, r: usize) -> Vec<usize> {
    g.skeleton()
        .distances_from(v)
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d <= r)
        .map(|(u, _)| u)
        .collect()
}

/// Skeleton edges with both endpoints in `h`.
pub fn induced_edges(g: &Dag, h: &[usize]) -> TargetEdges {
    let mut inside = vec![false; g.n()];
    for &v in h {
        inside[v] = true;
    }
    g.arcs().filter(|&(u, v)| inside[u] && inside[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::recover_interventions;

    fn six_vertex() -> Dag {
        Dag::new(6, [(0, 4), (0, 5), (1, 2), (1, 3), (4, 1), (4, 2), (4, 3), (4, 5), (5, 2)]).unwrap()
    }

    #[test]
    fn honest_oracle_matches_batch_closure() {
        let g = six_vertex();
        let mut o = HonestOracle::new(g.clone());
        o.intervene(&[0]).unwrap();
        o.intervene(&[1, 3]).unwrap();
        let batch = recover_interventions(&g, o.history());
        assert_eq!(o.current(), &batch.closure);
        assert!(o.intervene(&[]).is_err());
        assert!(o.intervene(&[9]).is_err());
    }

    #[test]
    fn relevant_nodes_in_six_vertex() {
        let g = six_vertex();
        let e = essential_graph(&g).closure;
        assert_eq!(relevant_nodes(&e, &[0, 4, 5]), vec![0, 4, 5]);
        assert!(relevant_nodes(&Pdag::from_dag(&g), &[0, 1, 2]).is_empty());
    }

    #[test]
    fn search_orients_six_vertex() {
        let g = six_vertex();
        let mut o = HonestOracle::new(g.clone());
        let all: Vec<usize> = (0..6).collect();
        let t = subset_search(&mut o, &all, 1).unwrap();
        assert_eq!(t.final_graph, Pdag::from_dag(&g));
        assert!(t.total_interventions() >= 2);
    }

    #[test]
    fn nothing_to_do_costs_nothing() {
        let g = Dag::new(3, [(0, 1), (2, 1)]).unwrap();
        let mut o = HonestOracle::new(g.clone());
        let t = subset_search(&mut o, &[0, 1, 2], 1).unwrap();
        assert_eq!(t.total_interventions(), 0);
        let r = random_search_baseline(&mut o, &g.all_edges(), 1).unwrap();
        assert_eq!(r.total_interventions(), 0);
    }

    #[test]
    fn single_target_takes_one_random_pick() {
        let g = six_vertex();
        let mut o = HonestOracle::new(g.clone());
        let t = TargetEdges::new(&g, [(4, 5)]).unwrap();
        let r = random_search_baseline(&mut o, &t, 3).unwrap();
        assert_eq!(r.total_interventions(), 1);
    }

    #[test]
    fn hop_neighborhood() {
        let g = Dag::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(r_hop_neighborhood(&g, 1, 1), vec![0, 1, 2]);
        assert_eq!(induced_edges(&g, &[0, 1, 2]).len(), 2);
    }
}
