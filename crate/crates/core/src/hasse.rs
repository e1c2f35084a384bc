//! Hasse diagrams of v-structure-free DAGs and the intervals of vertices
//! whose single-vertex intervention orients a given arc.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Dag, TargetEdges};
use crate::orientation::{essential_graph, SingletonClosures};
use crate::tree::RootedTree;

/// Transitive reduction: keeps `u -> v` unless `v` is reachable from another
/// child of `u`.
pub fn transitive_reduction(g: &Dag) -> Dag {
    let des = descendant_matrix(g);
    let n = g.n();
    g.filter_arcs(|u, v| {
        !g.children(u)
            .iter()
            .any(|&c| c != v && des[c * n + v])
    })
}

fn descendant_matrix(g: &Dag) -> Vec<bool> {
    let n = g.n();
    let mut des = vec![false; n * n];
    for &u in g.topological_order().iter().rev() {
        des[u * n + u] = true;
        for &c in g.children(u) {
            for x in 0..n {
                if des[c * n + x] {
                    des[u * n + x] = true;
                }
            }
        }
    }
    des
}

/// The Hasse diagram of one connected component, stored as a rooted tree
/// over local ids with a map back to the graph's vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseTree {
    tree: RootedTree,
    vertices: Vec<usize>,
    local: Vec<usize>,
}

impl HasseTree {
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    /// Sorted graph ids covered by this tree; local id `i` is `component()[i]`.
    pub fn component(&self) -> &[usize] {
        &self.vertices
    }

    pub fn root(&self) -> usize {
        self.vertices[self.tree.root()]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.local.get(v).is_some_and(|&l| l != usize::MAX)
    }

    /// Local id of graph vertex `v`.
    pub fn local(&self, v: usize) -> Option<usize> {
        self.local.get(v).copied().filter(|&l| l != usize::MAX)
    }

    pub fn global(&self, local: usize) -> usize {
        self.vertices[local]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.local(v)
            .and_then(|l| self.tree.parent(l))
            .map(|p| self.vertices[p])
    }

    /// Tree arcs `parent -> child` in graph ids, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .filter_map(|&v| self.parent(v).map(|p| (p, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// `v`, its tree parent, ..., the root, in graph ids.
    pub fn path_to_root(&self, v: usize) -> Option<Vec<usize>> {
        let l = self.local(v)?;
        Some(self.tree.path_to_root(l).into_iter().map(|x| self.vertices[x]).collect())
    }

    /// Indented dump, one vertex per line, children ascending.
    pub fn to_indented_text(&self) -> String {
        let mut s = String::new();
        let mut stack = vec![(self.tree.root(), 0usize)];
        while let Some((v, depth)) = stack.pop() {
            let _ = writeln!(s, "{}{}", "  ".repeat(depth), self.vertices[v]);
            for &c in self.tree.children(v).iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        s
    }
}

/// One Hasse tree per connected component, ordered by smallest vertex.
pub fn hasse_diagram(g: &Dag) -> Result<Vec<HasseTree>> {
    if let Some(&(u, v, w)) = g.v_structures().iter().next() {
        return Err(Error::VStructure(u, v, w));
    }
    let reduced = transitive_reduction(g);
    let mut trees = Vec::new();
    for comp in g.components() {
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let parent: Vec<Option<usize>> = comp
            .iter()
            .map(|&v| {
                let ps = reduced.parents(v);
                assert!(
                    ps.len() <= 1,
                    "vertex {v} has several Hasse parents in a v-structure-free DAG"
                );
                ps.first().map(|&p| local[p])
            })
            .collect();
        let tree = RootedTree::from_parents(parent)
            .expect("Hasse diagram of a v-structure-free component is a rooted tree");
        trees.push(HasseTree {
            tree,
            vertices: comp,
            local,
        });
    }
    Ok(trees)
}

/// Sorted vertices `u` with `y` a tree ancestor of `u` (inclusive).
pub fn subtree_vertices(h: &HasseTree, y: usize) -> Result<Vec<usize>> {
    let l = h
        .local(y)
        .ok_or_else(|| Error::InvalidInput(format!("vertex {y} is not in this Hasse tree")))?;
    let mut out: Vec<usize> = h.tree.subtree(l).into_iter().map(|x| h.vertices[x]).collect();
    out.sort_unstable();
    Ok(out)
}

/// A target arc encoded as the tree path from `start` down to `end`
/// (graph ids), within `trees[tree]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StabInterval {
    pub tree: usize,
    pub start: usize,
    pub end: usize,
    pub source_edge: Option<(usize, usize)>,
}

/// The top vertex `w` such that the vertices orienting `u -> v` are exactly
/// the tree path from `w` down to `v`. `None` if they do not form such a path.
pub fn orienting_segment(h: &HasseTree, cache: &SingletonClosures, u: usize, v: usize) -> Option<usize> {
    let orienting = cache.orienting_vertices(u, v);
    let path = h.path_to_root(v)?;
    let len = path.iter().take_while(|&&x| cache.orients(x, u, v)).count();
    (len > 0 && len == orienting.len()).then(|| path[len - 1])
}

/// One interval per target arc not already oriented observationally,
/// deduplicated and sorted.
///
/// # Panics
/// If some arc's orienting vertices fail to form a tree path segment.
pub fn cut_intervals(
    g: &Dag,
    trees: &[HasseTree],
    targets: &TargetEdges,
    cache: &SingletonClosures,
) -> Result<Vec<StabInterval>> {
    let essential = essential_graph(g);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (x, y) in targets.iter() {
        let (u, v) = g.orient_pair(x, y).ok_or(Error::NotAnEdge(x, y))?;
        if essential.closure.has_arc(u, v) {
            continue;
        }
        let t = trees
            .iter()
            .position(|h| h.contains(v))
            .ok_or_else(|| Error::InvalidInput(format!("vertex {v} not covered by any Hasse tree")))?;
        let w = orienting_segment(&trees[t], cache, u, v).unwrap_or_else(|| {
            panic!("vertices orienting {u} -> {v} do not form a tree path segment")
        });
        if seen.insert((t, w, v)) {
            out.push(StabInterval {
                tree: t,
                start: w,
                end: v,
                source_edge: Some((u, v)),
            });
        }
    }
    out.sort();
    Ok(out)
}
