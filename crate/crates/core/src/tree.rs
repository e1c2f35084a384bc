//! Rooted trees over dense local ids `0..n`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Build from a parent array. Exactly one entry (the root) must be `None`
    /// and every vertex must reach the root.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidInput("tree must have at least one vertex".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "tree must have exactly one root, found {}",
                roots.len()
            )));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::VertexOutOfRange { vertex: p, n });
                }
                if p == v {
                    return Err(Error::SelfLoop(v));
                }
                children[p].push(v);
            }
        }
        for list in &mut children {
            list.sort_unstable();
        }
        let tree = RootedTree {
            root: roots[0],
            parent,
            children,
        };
        if tree.preorder().len() != n {
            return Err(Error::InvalidInput("parent array contains a cycle".into()));
        }
        Ok(tree)
    }

    /// Build from `(child, parent)` pairs.
    pub fn from_edges(n: usize, root: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        let mut parent = vec![None; n];
        for &(c, p) in pairs {
            for x in [c, p] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if c == root {
                return Err(Error::InvalidInput(format!("root {root} cannot have a parent")));
            }
            if parent[c].replace(p).is_some() {
                return Err(Error::InvalidInput(format!("vertex {c} has two parents")));
            }
        }
        Self::from_parents(parent)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Children in ascending id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Depth-first preorder from the root, children ascending.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parent.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            if out.len() > self.parent.len() {
                break;
            }
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// `v`, its parent, ..., the root.
    pub fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut out = vec![v];
        while let Some(p) = self.parent[v] {
            out.push(p);
            v = p;
        }
        out
    }

    /// True if `a` is an ancestor of `b` (inclusive).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(x) = cur {
            if x == a {
                return true;
            }
            cur = self.parent[x];
        }
        false
    }

    /// Sorted vertices of the subtree rooted at `y`.
    pub fn subtree(&self, y: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![y];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Vertices on the tree path from ancestor `a` down to `b`, top first.
    /// Returns `None` if `a` is not an ancestor of `b`.
    pub fn path_between(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut up = Vec::new();
        let mut cur = Some(b);
        while let Some(x) = cur {
            up.push(x);
            if x == a {
                up.reverse();
                return Some(up);
            }
            cur = self.parent[x];
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_parent_arrays() {
        assert!(RootedTree::from_parents(vec![]).is_err());
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_edges(3, 0, &[(1, 0), (1, 2)]).is_err());
    }

    #[test]
    fn paths_and_subtrees() {
        // 0 -> {1, 2}, 1 -> {3}
        let t = RootedTree::from_edges(4, 0, &[(1, 0), (2, 0), (3, 1)]).unwrap();
        assert_eq!(t.preorder(), vec![0, 1, 3, 2]);
        assert_eq!(t.path_to_root(3), vec![3, 1, 0]);
        assert_eq!(t.path_between(0, 3), Some(vec![0, 1, 3]));
        assert_eq!(t.path_between(2, 3), None);
        assert_eq!(t.subtree(1), vec![1, 3]);
        assert!(t.is_ancestor(3, 3));
        assert!(!t.is_ancestor(3, 1));
    }
}
