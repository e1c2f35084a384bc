//! Graph representations: fully oriented DAGs, partially directed graphs, and
//! the undirected skeleton view used by the chordal routines.
//!
//! Vertices are dense ids `0..n`. All containers keep neighbor lists sorted so
//! every traversal is deterministic.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Normalize an unordered pair so the smaller id comes first.
#[inline]
pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A directed acyclic graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    arc: Vec<bool>,
}

impl Dag {
    /// Build a DAG, rejecting self-loops, duplicate or antiparallel arcs,
    /// out-of-range ids and directed cycles.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut dag = Dag::empty(n);
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if dag.is_adjacent(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            dag.insert_arc(u, v);
        }
        dag.sort_lists();
        dag.try_topological_order()?;
        Ok(dag)
    }

    /// Graph with `n` vertices and no arcs.
    pub fn empty(n: usize) -> Self {
        Dag {
            n,
            children: vec![Vec::new(); n],
            parents: vec![Vec::new(); n],
            arc: vec![false; n * n],
        }
    }

    fn insert_arc(&mut self, u: usize, v: usize) {
        self.arc[u * self.n + v] = true;
        self.children[u].push(v);
        self.parents[v].push(u);
    }

    fn sort_lists(&mut self) {
        for list in self.children.iter_mut().chain(self.parents.iter_mut()) {
            list.sort_unstable();
        }
    }

    /// Sub-DAG keeping only the arcs accepted by `keep`. Vertex set unchanged.
    pub fn filter_arcs<F>(&self, mut keep: F) -> Dag
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut out = Dag::empty(self.n);
        for (u, v) in self.arcs() {
            if keep(u, v) {
                out.insert_arc(u, v);
            }
        }
        out.sort_lists();
        out
    }

    /// Node-induced subgraph on `vertices`, relabelled to `0..vertices.len()`
    /// in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Dag {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut out = Dag::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &self.children[u] {
                if local[v] != usize::MAX {
                    out.insert_arc(i, local[v]);
                }
            }
        }
        out.sort_lists();
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    /// Arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(u, ch)| ch.iter().map(move |&v| (u, v)))
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc[u * self.n + v]
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    /// Sorted skeleton neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.parents[v]
            .iter()
            .chain(self.children[v].iter())
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    /// Orient an unordered skeleton pair the way this DAG does.
    pub fn orient_pair(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        if self.has_arc(u, v) {
            Some((u, v))
        } else if self.has_arc(v, u) {
            Some((v, u))
        } else {
            None
        }
    }

    fn try_topological_order(&self) -> Result<Vec<usize>> {
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| indegree[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(u)) = heap.pop() {
            order.push(u);
            for &v in &self.children[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(Error::Cycle)
        }
    }

    /// Topological order with smallest-id-first tie-breaking.
    pub fn topological_order(&self) -> Vec<usize> {
        self.try_topological_order()
            .expect("Dag invariant: construction rejects cycles")
    }

    /// Position of every vertex in [`Dag::topological_order`].
    pub fn topological_rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.n];
        for (i, v) in self.topological_order().into_iter().enumerate() {
            rank[v] = i;
        }
        rank
    }

    /// All v-structures `u -> v <- w` with `u < w` and `u`, `w` non-adjacent.
    pub fn v_structures(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for v in 0..self.n {
            let pa = &self.parents[v];
            for (i, &u) in pa.iter().enumerate() {
                for &w in &pa[i + 1..] {
                    if !self.is_adjacent(u, w) {
                        out.insert((u, v, w));
                    }
                }
            }
        }
        out
    }

    /// Indicator of `Anc[v]` (inclusive).
    pub fn ancestors(&self, v: usize) -> Vec<bool> {
        self.reach(v, &self.parents)
    }

    /// Indicator of `Des[v]` (inclusive).
    pub fn descendants(&self, v: usize) -> Vec<bool> {
        self.reach(v, &self.children)
    }

    fn reach(&self, start: usize, next: &[Vec<usize>]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &next[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Connected components of the skeleton, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.skeleton().components()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n);
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g.sort_lists();
        g
    }

    /// Every skeleton edge as a target set.
    pub fn all_edges(&self) -> TargetEdges {
        TargetEdges {
            edges: self.arcs().map(|(u, v)| edge_key(u, v)).collect(),
        }
    }

    /// Text in the `.dag` format: vertex count, then one `u v` line per arc.
    pub fn to_dag_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Adjacency state of an ordered pair in a [`Pdag`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    Absent,
    Undirected,
    /// `u -> v` when stored at `(u, v)`.
    Out,
    /// `v -> u` when stored at `(u, v)`.
    In,
}

/// Partially directed graph. Each adjacent pair is either an arc or an
/// undirected edge, never both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pdag {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    link: Vec<Link>,
}

impl Pdag {
    pub fn new<D, U>(n: usize, directed: D, undirected: U) -> Result<Self>
    where
        D: IntoIterator<Item = (usize, usize)>,
        U: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = Pdag::empty(n);
        for ((u, v), is_arc) in directed
            .into_iter()
            .map(|e| (e, true))
            .chain(undirected.into_iter().map(|e| (e, false)))
        {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if p.is_adjacent(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            p.add(u, v, if is_arc { Link::Out } else { Link::Undirected });
        }
        for list in &mut p.neighbors {
            list.sort_unstable();
        }
        Ok(p)
    }

    pub fn empty(n: usize) -> Self {
        Pdag {
            n,
            neighbors: vec![Vec::new(); n],
            link: vec![Link::Absent; n * n],
        }
    }

    fn add(&mut self, u: usize, v: usize, link: Link) {
        self.neighbors[u].push(v);
        self.neighbors[v].push(u);
        self.set(u, v, link);
    }

    fn set(&mut self, u: usize, v: usize, link: Link) {
        let back = match link {
            Link::Out => Link::In,
            Link::In => Link::Out,
            other => other,
        };
        self.link[u * self.n + v] = link;
        self.link[v * self.n + u] = back;
    }

    /// Skeleton of `g` with every edge undirected.
    pub fn undirected_skeleton(g: &Dag) -> Self {
        Self::with_links(g, |_, _| Link::Undirected)
    }

    /// `g` itself, every edge directed.
    pub fn from_dag(g: &Dag) -> Self {
        Self::with_links(g, |_, _| Link::Out)
    }

    fn with_links<F: Fn(usize, usize) -> Link>(g: &Dag, f: F) -> Self {
        let mut p = Pdag::empty(g.n());
        for (u, v) in g.arcs() {
            p.add(u, v, f(u, v));
        }
        for list in &mut p.neighbors {
            list.sort_unstable();
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn link(&self, u: usize, v: usize) -> Link {
        self.link[u * self.n + v]
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.link(u, v) != Link::Absent
    }

    /// True when `u -> v` is oriented.
    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.link(u, v) == Link::Out
    }

    #[inline]
    pub fn is_undirected(&self, u: usize, v: usize) -> bool {
        self.link(u, v) == Link::Undirected
    }

    /// Orient the undirected edge `u - v` as `u -> v`. Returns false if the
    /// pair was already oriented (either way).
    ///
    /// # Panics
    /// If `u` and `v` are not adjacent.
    pub fn orient(&mut self, u: usize, v: usize) -> bool {
        match self.link(u, v) {
            Link::Undirected => {
                self.set(u, v, Link::Out);
                true
            }
            Link::Absent => panic!("cannot orient non-edge {u} - {v}"),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Vertices `x` with `x -> v` oriented.
    pub fn directed_parents(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[v]
            .iter()
            .copied()
            .filter(move |&x| self.link(v, x) == Link::In)
    }

    /// Vertices `x` with `v -> x` oriented.
    pub fn directed_children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[v]
            .iter()
            .copied()
            .filter(move |&x| self.link(v, x) == Link::Out)
    }

    pub fn undirected_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[v]
            .iter()
            .copied()
            .filter(move |&x| self.link(v, x) == Link::Undirected)
    }

    /// Oriented arcs in lexicographic order.
    pub fn directed_arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.directed_children(u).map(move |v| (u, v)))
            .collect()
    }

    /// Undirected edges as `(min, max)` pairs in lexicographic order.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.undirected_neighbors(u)
                    .filter(move |&v| u < v)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn num_undirected(&self) -> usize {
        self.undirected_edges().len()
    }

    pub fn is_fully_directed(&self) -> bool {
        self.link.iter().all(|&l| l != Link::Undirected)
    }

    /// True when the oriented part contains a directed cycle.
    pub fn has_directed_cycle(&self) -> bool {
        let mut indegree: Vec<usize> = (0..self.n).map(|v| self.directed_parents(v).count()).collect();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for w in self.directed_children(u) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen != self.n
    }

    /// Undirected part only (chain components live here).
    pub fn undirected_part(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n);
        for (u, v) in self.undirected_edges() {
            g.add_edge(u, v);
        }
        g.sort_lists();
        g
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n);
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        g.sort_lists();
        g
    }

    /// Annotated text dump: vertex count, then `u v d` for arcs and `u v u`
    /// for undirected edges.
    pub fn to_annotated_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.directed_arcs() {
            let _ = writeln!(s, "{u} {v} d");
        }
        for (u, v) in self.undirected_edges() {
            let _ = writeln!(s, "{u} {v} u");
        }
        s
    }
}

/// Simple undirected graph with sorted adjacency lists and O(1) adjacency tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = UndirectedGraph::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !g.is_adjacent(u, v) {
                g.add_edge(u, v);
            }
        }
        g.sort_lists();
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
    }

    fn sort_lists(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Connected components; each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.n])
    }

    /// Connected components after deleting the vertices flagged in `removed`.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if removed[s] || label[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[s] = id;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !removed[w] && label[w] == usize::MAX {
                        label[w] = id;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Breadth-first distances from `source` (`usize::MAX` when unreachable).
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// A set of target edges, stored as normalized `(min, max)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TargetEdges {
    edges: BTreeSet<(usize, usize)>,
}

impl TargetEdges {
    /// Validate that every pair is a skeleton edge of `g`.
    pub fn new<I>(g: &Dag, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = BTreeSet::new();
        for (u, v) in pairs {
            for x in [u, v] {
                if x >= g.n() {
                    return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
                }
            }
            if !g.is_adjacent(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
            edges.insert(edge_key(u, v));
        }
        Ok(TargetEdges { edges })
    }

    /// Pairs without a host graph (e.g. the input to a vertex cover).
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        TargetEdges {
            edges: pairs.into_iter().map(|(u, v)| edge_key(u, v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Sorted distinct endpoints.
    pub fn endpoints(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        set.into_iter().collect()
    }

    pub fn is_subset_of_edges(&self, g: &Dag) -> bool {
        self.edges.iter().all(|&(u, v)| u < g.n() && v < g.n() && g.is_adjacent(u, v))
    }
}

impl FromIterator<(usize, usize)> for TargetEdges {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        TargetEdges::from_pairs(iter)
    }
}
