//! Plain-text instance formats.
//!
//! Blank lines and lines starting with `#` are skipped everywhere. Vertex ids
//! are 0-based.
//!
//! * `.dag`: first line `n`, then one `u v` line per arc `u -> v`.
//! * `.tgt`: one `u v` line per target edge; the pair order is ignored.
//! * `.wts`: one `v cost` line per vertex; unlisted vertices cost 1.
//! * `.stab`: first line `n root`, then `n - 1` lines `child parent`, then
//!   interval lines `a b [cost]` (the trailing cost is ignored).
//! * node list: whitespace-separated vertex ids.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Dag, TargetEdges};
use crate::stabbing::Interval;
use crate::tree::RootedTree;

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn field<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {tok:?}"),
    })
}

fn arity(line: usize, toks: &[&str], lo: usize, hi: usize) -> Result<()> {
    if toks.len() < lo || toks.len() > hi {
        let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
        return Err(Error::Parse {
            line,
            msg: format!("expected {want} fields, found {}", toks.len()),
        });
    }
    Ok(())
}

fn pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    lines(text)
        .map(|(i, t)| {
            arity(i, &t, 2, 2)?;
            Ok((field(i, t[0])?, field(i, t[1])?))
        })
        .collect()
}

pub fn parse_dag(text: &str) -> Result<Dag> {
    let mut it = lines(text);
    let (i, head) = it.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    arity(i, &head, 1, 1)?;
    let n: usize = field(i, head[0])?;
    let mut arcs = Vec::new();
    for (i, t) in it {
        arity(i, &t, 2, 2)?;
        arcs.push((field(i, t[0])?, field(i, t[1])?));
    }
    Dag::new(n, arcs)
}

pub fn parse_targets(text: &str, g: &Dag) -> Result<TargetEdges> {
    TargetEdges::new(g, pairs(text)?)
}

pub fn parse_weights(text: &str, n: usize) -> Result<Vec<f64>> {
    let mut costs = vec![1.0; n];
    for (i, t) in lines(text) {
        arity(i, &t, 2, 2)?;
        let v: usize = field(i, t[0])?;
        let c: f64 = field(i, t[1])?;
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Parse {
                line: i,
                msg: format!("cost {c} must be finite and nonnegative"),
            });
        }
        costs[v] = c;
    }
    Ok(costs)
}

pub fn parse_nodes(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, t) in lines(text) {
        for tok in t {
            let v: usize = field(i, tok)?;
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A rooted tree and intervals on it, as read from a `.stab` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabFile {
    pub tree: RootedTree,
    pub intervals: Vec<Interval>,
}

pub fn parse_stab(text: &str) -> Result<StabFile> {
    let mut it = lines(text);
    let (i, head) = it.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n root` header".into(),
    })?;
    arity(i, &head, 2, 2)?;
    let n: usize = field(i, head[0])?;
    let root: usize = field(i, head[1])?;
    if n == 0 {
        return Err(Error::Parse {
            line: i,
            msg: "tree must have at least one vertex".into(),
        });
    }
    let mut parent_lines = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let (i, t) = it.next().ok_or(Error::Parse {
            line: i,
            msg: format!("expected {} `child parent` lines", n - 1),
        })?;
        arity(i, &t, 2, 2)?;
        parent_lines.push((field(i, t[0])?, field(i, t[1])?));
    }
    let tree = RootedTree::from_edges(n, root, &parent_lines)?;
    let mut intervals = Vec::new();
    for (i, t) in it {
        arity(i, &t, 2, 3)?;
        let (a, b): (usize, usize) = (field(i, t[0])?, field(i, t[1])?);
        if a >= n || b >= n || !tree.is_ancestor(a, b) {
            return Err(Error::Parse {
                line: i,
                msg: format!("{a} is not an ancestor of {b}"),
            });
        }
        if let Some(c) = t.get(2) {
            field::<f64>(i, c)?;
        }
        intervals.push(Interval::new(a, b));
    }
    Ok(StabFile { tree, intervals })
}

pub fn read_dag(path: impl AsRef<Path>) -> Result<Dag> {
    parse_dag(&fs::read_to_string(path)?)
}

pub fn read_targets(path: impl AsRef<Path>, g: &Dag) -> Result<TargetEdges> {
    parse_targets(&fs::read_to_string(path)?, g)
}

pub fn read_weights(path: impl AsRef<Path>, n: usize) -> Result<Vec<f64>> {
    parse_weights(&fs::read_to_string(path)?, n)
}

pub fn read_nodes(path: impl AsRef<Path>, n: usize) -> Result<Vec<usize>> {
    parse_nodes(&fs::read_to_string(path)?, n)
}

pub fn read_stab(path: impl AsRef<Path>) -> Result<StabFile> {
    parse_stab(&fs::read_to_string(path)?)
}

pub fn targets_to_text(t: &TargetEdges) -> String {
    t.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dag_round_trip() {
        let g = Dag::new(4, [(0, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(parse_dag(&g.to_dag_text()).unwrap(), g);
        assert_eq!(parse_dag("# comment\n3\n\n0 1\n").unwrap().num_arcs(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_dag("3\n0 1\n1 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_dag("3\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_dag("3\n0 1\n1 2\n2 0\n"), Err(Error::Cycle)));
        assert!(matches!(parse_dag(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn targets_must_be_edges() {
        let g = Dag::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(parse_targets("2 1\n", &g).unwrap().len(), 1);
        assert!(matches!(parse_targets("0 2\n", &g), Err(Error::NotAnEdge(0, 2))));
        assert_eq!(targets_to_text(&g.all_edges()), "0 1\n1 2\n");
    }

    #[test]
    fn weights_default_to_one() {
        assert_eq!(parse_weights("1 2.5\n", 3).unwrap(), vec![1.0, 2.5, 1.0]);
        assert!(parse_weights("1 -1\n", 3).is_err());
        assert!(parse_weights("5 1\n", 3).is_err());
    }

    #[test]
    fn stab_format() {
        let f = parse_stab("3 0\n1 0\n2 1\n0 2 7\n1 1\n").unwrap();
        assert_eq!(f.tree.root(), 0);
        assert_eq!(f.intervals, vec![Interval::new(0, 2), Interval::new(1, 1)]);
        assert!(matches!(parse_stab("3 0\n1 0\n2 1\n2 0\n"), Err(Error::Parse { line: 4, .. })));
        assert!(parse_stab("3 0\n1 0\n").is_err());
    }

    #[test]
    fn node_lists() {
        assert_eq!(parse_nodes("3 1\n1 0", 4).unwrap(), vec![0, 1, 3]);
        assert!(parse_nodes("4", 4).is_err());
    }
}
