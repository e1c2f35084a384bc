//! Subset verifying sets: atomic optimum, bounded-size grouping and the
//! additive cost objective `alpha * w(I) + beta * |I|`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Dag, TargetEdges, UndirectedGraph};
use crate::hasse::{cut_intervals, hasse_diagram, HasseTree};
use crate::orientation::{oriented_subgraph, recover_interventions, SingletonClosures};
use crate::stabbing::{solve, Interval, PreparedInstance};

/// An ordered list of interventions, each a nonempty sorted vertex set of
/// size at most `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterventionSet {
    interventions: Vec<Vec<usize>>,
    k: usize,
}

impl InterventionSet {
    pub fn new(interventions: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("intervention size bound k must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(interventions.len());
        for mut s in interventions {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidInput("empty intervention".into()));
            }
            if s.len() > k {
                return Err(Error::InvalidInput(format!(
                    "intervention {s:?} has more than k = {k} vertices"
                )));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidInput(format!("duplicate intervention {s:?}")));
            }
            out.push(s);
        }
        Ok(InterventionSet { interventions: out, k })
    }

    /// One singleton intervention per vertex, ascending.
    pub fn atomic<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let set: BTreeSet<usize> = vertices.into_iter().collect();
        InterventionSet {
            interventions: set.into_iter().map(|v| vec![v]).collect(),
            k: 1,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.interventions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interventions.is_empty()
    }

    pub fn as_slice(&self) -> &[Vec<usize>] {
        &self.interventions
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.interventions.iter().map(Vec::as_slice)
    }

    /// Sorted distinct vertices touched by any intervention.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.interventions.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// `w(I)`: total cost over every vertex of every intervention.
    pub fn weight(&self, costs: &[f64]) -> f64 {
        self.interventions.iter().flatten().map(|&v| costs[v]).sum()
    }

    /// Checks every vertex id is below `n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.interventions.iter().flatten().find(|&&v| v >= n) {
            Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for InterventionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .interventions
            .iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(usize::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Weights of the additive objective.
#[derive(Clone, Debug, PartialEq)]
pub struct CostParams {
    pub alpha: f64,
    pub beta: f64,
    pub vertex_costs: Vec<f64>,
}

impl CostParams {
    pub fn new(alpha: f64, beta: f64, vertex_costs: Vec<f64>) -> Result<Self> {
        let bad = |x: f64| !x.is_finite() || x < 0.0;
        if bad(alpha) || bad(beta) {
            return Err(Error::InvalidInput("alpha and beta must be finite and nonnegative".into()));
        }
        if let Some(c) = vertex_costs.iter().find(|&&c| bad(c)) {
            return Err(Error::InvalidInput(format!("vertex cost {c} must be finite and nonnegative")));
        }
        Ok(CostParams {
            alpha,
            beta,
            vertex_costs,
        })
    }

    /// Unit vertex costs.
    pub fn unit(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, vec![1.0; n])
    }

    pub fn objective(&self, set: &InterventionSet) -> f64 {
        self.alpha * set.weight(&self.vertex_costs) + self.beta * set.len() as f64
    }
}

fn check_targets(g: &Dag, targets: &TargetEdges) -> Result<()> {
    for (u, v) in targets.iter() {
        if u >= g.n() || v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: g.n(),
            });
        }
        if !g.is_adjacent(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
    }
    Ok(())
}

struct Component {
    vertices: Vec<usize>,
    /// Graph id to local id, `usize::MAX` outside.
    local: Vec<usize>,
    sub: Dag,
    prepared: OnceLock<(Vec<HasseTree>, SingletonClosures)>,
}

/// Per-graph precomputation shared by every target set: the graph with
/// observationally oriented arcs removed, split into connected components,
/// each with its Hasse tree and single-vertex closures built on first use.
pub struct Verifier {
    g: Dag,
    g0: Dag,
    components: Vec<Component>,
}

impl Verifier {
    pub fn new(g: &Dag) -> Self {
        let empty: [[usize; 0]; 0] = [];
        let g0 = oriented_subgraph(g, &empty);
        let components = g0
            .components()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|vertices| {
                let mut local = vec![usize::MAX; g.n()];
                for (i, &v) in vertices.iter().enumerate() {
                    local[v] = i;
                }
                Component {
                    sub: g0.induced(&vertices),
                    vertices,
                    local,
                    prepared: OnceLock::new(),
                }
            })
            .collect();
        Verifier {
            g: g.clone(),
            g0,
            components,
        }
    }

    pub fn graph(&self) -> &Dag {
        &self.g
    }

    /// Minimum-weight vertex set whose atomic interventions orient `targets`.
    fn weighted_vertices(&self, targets: &TargetEdges, weights: &[f64]) -> Result<Vec<usize>> {
        check_targets(&self.g, targets)?;
        let mut chosen = Vec::new();
        for c in &self.components {
            let local_targets: Vec<(usize, usize)> = targets
                .iter()
                .filter(|&(u, v)| c.local[u] != usize::MAX && self.g0.is_adjacent(u, v))
                .map(|(u, v)| (c.local[u], c.local[v]))
                .collect();
            if local_targets.is_empty() {
                continue;
            }
            let sub_targets = TargetEdges::new(&c.sub, local_targets)?;
            let (trees, cache) = match c.prepared.get() {
                Some(p) => p,
                None => {
                    let trees = hasse_diagram(&c.sub)?;
                    let cache = SingletonClosures::new(&c.sub);
                    c.prepared.get_or_init(|| (trees, cache))
                }
            };
            debug_assert_eq!(trees.len(), 1);
            let h = &trees[0];
            let intervals: Vec<Interval> = cut_intervals(&c.sub, trees, &sub_targets, cache)?
                .into_iter()
                .map(|iv| {
                    Interval::new(
                        h.local(iv.start).expect("interval inside tree"),
                        h.local(iv.end).expect("interval inside tree"),
                    )
                })
                .collect();
            let tree_costs: Vec<f64> = h.component().iter().map(|&x| weights[c.vertices[x]]).collect();
            let prep = PreparedInstance::new(h.tree().clone(), &intervals, Some(tree_costs))?;
            let sol = solve(&prep);
            chosen.extend(sol.stab.into_iter().map(|x| c.vertices[h.global(x)]));
        }
        chosen.sort_unstable();
        Ok(chosen)
    }

    /// Minimum-size atomic verifying set for `targets`.
    pub fn atomic(&self, targets: &TargetEdges) -> Result<InterventionSet> {
        let vertices = self.weighted_vertices(targets, &vec![1.0; self.g.n()])?;
        Ok(InterventionSet::atomic(vertices))
    }

    /// Verifying set with interventions of size at most `k`, at most
    /// `ceil(l / k) + 1` of them where `l` is the atomic optimum.
    pub fn bounded(&self, targets: &TargetEdges, k: usize) -> Result<InterventionSet> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        let atomic = self.atomic(targets)?;
        if k == 1 {
            return Ok(atomic);
        }
        InterventionSet::new(group_vertices(&self.g0, &atomic.vertices(), k)?, k)
    }

    /// Verifying set for the objective `alpha * w(I) + beta * |I|`, within
    /// `2 * beta` of the optimum over interventions of size at most `k`.
    pub fn cost(&self, targets: &TargetEdges, k: usize, params: &CostParams) -> Result<InterventionSet> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        let n = self.g.n();
        if params.vertex_costs.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} vertex costs, got {}",
                params.vertex_costs.len()
            )));
        }
        let surrogate: Vec<f64> = params
            .vertex_costs
            .iter()
            .map(|&w| params.alpha * w + params.beta / k as f64)
            .collect();
        let atomic = self.weighted_vertices(targets, &surrogate)?;
        if k == 1 {
            return Ok(InterventionSet::atomic(atomic));
        }
        InterventionSet::new(group_vertices(&self.g0, &atomic, k)?, k)
    }
}

/// Minimum-size atomic verifying set for `targets`.
pub fn atomic_verifying_set(g: &Dag, targets: &TargetEdges) -> Result<InterventionSet> {
    Verifier::new(g).atomic(targets)
}

/// True when the interventions orient every target edge.
pub fn verify_is_verifying(g: &Dag, targets: &TargetEdges, set: &InterventionSet) -> bool {
    set.check_range(g.n()).is_ok()
        && targets.is_subset_of_edges(g)
        && recover_interventions(g, set.as_slice()).orients_all(targets)
}

/// Shrink an arc set until its skeleton is a forest, without losing any
/// recovered orientation and without adding endpoints.
///
/// On each cycle the vertex `s` latest in topological order has two cycle
/// neighbors `p < q` (by order), both pointing into `s`. Without
/// v-structures `p -> q` is an arc, and `p -> q -> s` forces `p -> s`, so the
/// arc `p -> s` is swapped for `p -> q`.
pub fn forest_subset(g: &Dag, arcs: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let rank = g.topological_rank();
    let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(u, v) in arcs {
        if u >= g.n() || v >= g.n() || !g.has_arc(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        set.insert((u, v));
    }
    while let Some(cycle) = find_cycle(g.n(), &set) {
        let len = cycle.len();
        let (pos, &s) = cycle
            .iter()
            .enumerate()
            .max_by_key(|&(_, &v)| rank[v])
            .expect("cycle is nonempty");
        let a = cycle[(pos + len - 1) % len];
        let b = cycle[(pos + 1) % len];
        let (p, q) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
        if !g.has_arc(p, q) {
            return Err(Error::VStructure(p.min(q), s, p.max(q)));
        }
        set.remove(&(p, s));
        set.insert((p, q));
    }
    Ok(set.into_iter().collect())
}

/// A cycle (as a vertex sequence) in the skeleton of `arcs`, if any.
fn find_cycle(n: usize, arcs: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let mut forest = ForestBuilder::new(n);
    for &(u, v) in arcs {
        if let Some(path) = forest.path(u, v) {
            return Some(path);
        }
        forest.add(u, v);
    }
    None
}

struct ForestBuilder {
    adj: Vec<Vec<usize>>,
}

impl ForestBuilder {
    fn new(n: usize) -> Self {
        ForestBuilder { adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    /// Path from `u` to `v` in the current forest.
    fn path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = prev[cur];
                    path.push(cur);
                }
                return Some(path);
            }
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

/// Pack atomic verifying vertices into groups of at most `k` so that every
/// needed orientation among them is still cut.
fn group_vertices(g0: &Dag, atomic: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
    if atomic.is_empty() {
        return Ok(Vec::new());
    }
    let inside: BTreeSet<usize> = atomic.iter().copied().collect();
    let internal: Vec<(usize, usize)> = g0
        .arcs()
        .filter(|(u, v)| inside.contains(u) && inside.contains(v))
        .collect();
    let forest = forest_subset(g0, &internal)?;
    let skeleton = UndirectedGraph::from_edges(g0.n(), forest)?;
    let mut color = vec![usize::MAX; g0.n()];
    for &root in atomic {
        if color[root] != usize::MAX {
            continue;
        }
        let dist = skeleton.distances_from(root);
        for (v, &d) in dist.iter().enumerate() {
            if d != usize::MAX {
                color[v] = d % 2;
            }
        }
    }
    let mut groups = Vec::new();
    for c in 0..2 {
        let class: Vec<usize> = atomic.iter().copied().filter(|&v| color[v] == c).collect();
        groups.extend(class.chunks(k).map(<[usize]>::to_vec));
    }
    Ok(groups)
}

/// See [`Verifier::bounded`].
pub fn bounded_verifying_set(g: &Dag, targets: &TargetEdges, k: usize) -> Result<InterventionSet> {
    Verifier::new(g).bounded(targets, k)
}

/// See [`Verifier::cost`].
pub fn cost_verifying_set(g: &Dag, targets: &TargetEdges, k: usize, params: &CostParams) -> Result<InterventionSet> {
    Verifier::new(g).cost(targets, k, params)
}
