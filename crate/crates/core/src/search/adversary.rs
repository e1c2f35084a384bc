//! An oracle for the clique-with-pendants instance that fixes the hidden
//! clique order lazily, always putting the queried vertex as late as possible.

use std::fmt;

use crate::error::{Error, Result};
use crate::generate::lower_bound_instance;
use crate::graph::{Dag, Pdag, TargetEdges};
use crate::orientation::{essential_graph, recover_interventions};

use super::{apply_arcs, check_intervention, random_search_baseline, subset_search, subset_search_until};
use super::{InterventionOracle, SearchTranscript};

/// Answers atomic interventions on `lower_bound_instance(n)`.
///
/// Querying clique vertex `v` for the first time commits it to the latest
/// free clique position; it then lies after every uncommitted clique vertex
/// and before every vertex committed earlier. Pendants always come last, so
/// querying pendant `n + i` reveals only `i -> n + i`.
#[derive(Clone, Debug)]
pub struct AdversaryOracle {
    n: usize,
    position: Vec<Option<usize>>,
    next_free: usize,
    current: Pdag,
    history: Vec<Vec<usize>>,
    snapshots: Vec<Pdag>,
    clique_interventions: usize,
}

impl AdversaryOracle {
    pub fn new(n: usize) -> Result<Self> {
        let (g, _) = lower_bound_instance(n)?;
        Ok(AdversaryOracle {
            n,
            position: vec![None; n],
            next_free: n,
            current: essential_graph(&g).closure,
            history: Vec::new(),
            snapshots: Vec::new(),
            clique_interventions: 0,
        })
    }

    /// Clique size.
    pub fn clique_size(&self) -> usize {
        self.n
    }

    pub fn targets(&self) -> TargetEdges {
        (0..self.n).map(|i| (i, self.n + i)).collect()
    }

    pub fn history(&self) -> &[Vec<usize>] {
        &self.history
    }

    /// The graph after each answer.
    pub fn snapshots(&self) -> &[Pdag] {
        &self.snapshots
    }

    pub fn clique_interventions(&self) -> usize {
        self.clique_interventions
    }

    /// A DAG consistent with every answer: committed vertices keep their
    /// positions, uncommitted ones fill the earliest positions by id.
    pub fn witness(&self) -> Dag {
        let mut early = 0;
        let order: Vec<usize> = self
            .position
            .iter()
            .map(|pos| {
                pos.unwrap_or_else(|| {
                    early += 1;
                    early - 1
                })
            })
            .collect();
        let mut arcs = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if order[u] < order[v] {
                    arcs.push((u, v));
                }
            }
            arcs.push((u, self.n + u));
        }
        Dag::new(2 * self.n, arcs).expect("a total order gives an acyclic graph")
    }

    /// Whether the witness reproduces every snapshot.
    pub fn replay_consistent(&self) -> bool {
        let w = self.witness();
        (0..self.history.len())
            .all(|t| recover_interventions(&w, &self.history[..=t]).closure == self.snapshots[t])
    }
}

impl InterventionOracle for AdversaryOracle {
    fn num_vertices(&self) -> usize {
        2 * self.n
    }

    fn current(&self) -> &Pdag {
        &self.current
    }

    fn intervene(&mut self, set: &[usize]) -> Result<Vec<(usize, usize)>> {
        check_intervention(set, 2 * self.n)?;
        if set.len() != 1 {
            return Err(Error::Protocol("the adversary only answers atomic interventions".into()));
        }
        let v = set[0];
        let n = self.n;
        let revealed: Vec<(usize, usize)> = if v >= n {
            vec![(v - n, v)]
        } else {
            self.clique_interventions += 1;
            if self.position[v].is_none() {
                self.next_free -= 1;
                self.position[v] = Some(self.next_free);
            }
            let pv = self.position[v];
            let mut arcs = vec![(v, n + v)];
            for u in (0..n).filter(|&u| u != v) {
                // Uncommitted vertices end up in earlier positions.
                match self.position[u] {
                    Some(pu) if Some(pu) > pv => arcs.push((v, u)),
                    _ => arcs.push((u, v)),
                }
            }
            arcs
        };
        self.history.push(set.to_vec());
        let newly = apply_arcs(&mut self.current, &revealed);
        self.snapshots.push(self.current.clone());
        Ok(newly)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchAlgorithm {
    SubsetSearch,
    Random { seed: u64 },
    FullSearch,
}

impl fmt::Display for SearchAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchAlgorithm::SubsetSearch => write!(f, "subsetsearch"),
            SearchAlgorithm::Random { .. } => write!(f, "random"),
            SearchAlgorithm::FullSearch => write!(f, "fullsearch"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdversaryReport {
    pub algorithm: SearchAlgorithm,
    pub clique_interventions: usize,
    pub total_interventions: usize,
    pub targets_oriented: bool,
    pub witness: Dag,
    pub replay_consistent: bool,
    pub transcript: SearchTranscript,
}

/// Run `algorithm` against the adversary on `lower_bound_instance(n)` until
/// every pendant is oriented.
pub fn adaptive_adversary_session(algorithm: SearchAlgorithm, n: usize) -> Result<AdversaryReport> {
    let mut oracle = AdversaryOracle::new(n)?;
    let targets = oracle.targets();
    let all: Vec<usize> = (0..2 * n).collect();
    let transcript = match algorithm {
        SearchAlgorithm::SubsetSearch => subset_search(&mut oracle, &all, 1)?,
        SearchAlgorithm::Random { seed } => random_search_baseline(&mut oracle, &targets, seed)?,
        SearchAlgorithm::FullSearch => subset_search_until(&mut oracle, &all, 1, Some(&targets))?,
    };
    let final_graph = oracle.current();
    let targets_oriented = targets.iter().all(|(u, v)| final_graph.has_arc(u, v));
    Ok(AdversaryReport {
        algorithm,
        clique_interventions: oracle.clique_interventions(),
        total_interventions: oracle.history().len(),
        targets_oriented,
        witness: oracle.witness(),
        replay_consistent: oracle.replay_consistent(),
        transcript,
    })
}
