//! Relation trees: signed spanning trees of `K_n` that encode a cut.
//!
//! A `-1` edge puts its endpoints on opposite sides, a `+1` edge on the same
//! side. The tree need not use edges of the graph whose cut it describes.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SpinAssignment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree")]
pub struct RelationTree {
    n: usize,
    edges: Vec<(usize, usize, i8)>,
}

#[derive(Deserialize)]
struct RawTree {
    n: usize,
    edges: Vec<(usize, usize, i8)>,
}

impl TryFrom<RawTree> for RelationTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        RelationTree::new(raw.n, raw.edges)
    }
}

impl RelationTree {
    pub fn new(n: usize, edges: Vec<(usize, usize, i8)>) -> Result<Self> {
        validate(n, &edges)?;
        Ok(RelationTree { n, edges })
    }

    /// Skips validation; callers guarantee a spanning tree.
    pub(crate) fn from_parts_unchecked(n: usize, edges: Vec<(usize, usize, i8)>) -> Self {
        debug_assert!(validate(n, &edges).is_ok(), "{:?}", validate(n, &edges));
        RelationTree { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, i8)] {
        &self.edges
    }

    pub fn negative_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.2 < 0).count()
    }

    pub fn validate(&self) -> Result<()> {
        validate(self.n, &self.edges)
    }

    /// Propagates signs outward from vertex 0 (`z_0 = +1`), breadth first.
    pub fn scan(&self) -> SpinAssignment {
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.n];
        for &(u, v, s) in &self.edges {
            adj[u].push((v, s));
            adj[v].push((u, s));
        }
        let mut z = vec![0i8; self.n];
        z[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &(v, s) in &adj[u] {
                if z[v] == 0 {
                    z[v] = s * z[u];
                    queue.push_back(v);
                }
            }
        }
        SpinAssignment::new(z).expect("a spanning tree reaches every vertex")
    }

    pub fn cut_weight(&self, g: &Graph) -> Result<f64> {
        tree_cut_weight(g, self)
    }
}

pub fn scan(t: &RelationTree) -> SpinAssignment {
    t.scan()
}

pub fn tree_cut_weight(g: &Graph, t: &RelationTree) -> Result<f64> {
    if g.n() != t.n {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: t.n,
        });
    }
    g.cut_weight(&t.scan())
}

fn validate(n: usize, edges: &[(usize, usize, i8)]) -> Result<()> {
    if n == 0 {
        return Err(Error::Tree("tree needs at least one vertex".into()));
    }
    if edges.len() != n - 1 {
        return Err(Error::Tree(format!(
            "{} edges, but a spanning tree on {n} vertices has {}",
            edges.len(),
            n - 1
        )));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v, s) in edges {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if s != 1 && s != -1 {
            return Err(Error::Tree(format!("sign {s} on ({u}, {v}) is not +-1")));
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Err(Error::Tree(format!(
                "edge ({u}, {v}) closes a cycle, so the edges do not span all {n} vertices"
            )));
        }
        parent[a] = b;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, e: &[(usize, usize, i8)]) -> RelationTree {
        RelationTree::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn scan_examples() {
        let t = tree(3, &[(0, 1, -1), (1, 2, 1)]);
        assert_eq!(t.scan().as_slice(), &[1, -1, -1]);
        assert_eq!(t.scan().partition(), (vec![0], vec![1, 2]));
        assert_eq!(tree(2, &[(0, 1, 1)]).scan().as_slice(), &[1, 1]);
        let star = tree(4, &[(0, 1, -1), (0, 2, -1), (0, 3, -1)]);
        assert_eq!(star.scan().as_slice(), &[1, -1, -1, -1]);
        assert_eq!(tree(1, &[]).scan().as_slice(), &[1]);
    }

    #[test]
    fn scan_is_order_independent() {
        let a = tree(4, &[(2, 3, -1), (1, 2, 1), (0, 1, -1)]);
        let b = tree(4, &[(0, 1, -1), (1, 2, 1), (2, 3, -1)]);
        assert_eq!(a.scan(), b.scan());
    }

    #[test]
    fn tree_cut_weight_examples() {
        let tri = Graph::from_edges(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap();
        let k3 = Graph::from_edges(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(tree_cut_weight(&tri, &tree(3, &[(0, 1, -1), (1, 2, 1)])).unwrap(), 5.0);
        assert_eq!(tree_cut_weight(&tri, &tree(3, &[(0, 2, 1), (1, 2, 1)])).unwrap(), 0.0);
        assert_eq!(tree_cut_weight(&k3, &tree(3, &[(0, 1, -1), (0, 2, -1)])).unwrap(), 2.0);
        assert!(tree_cut_weight(&k3, &tree(2, &[(0, 1, -1)])).is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(RelationTree::new(3, vec![(0, 1, -1), (1, 2, 1)]).is_ok());
        let e = RelationTree::new(3, vec![(0, 1, -1), (0, 1, 1)]).unwrap_err();
        assert!(e.to_string().contains("do not span"), "{e}");
        let e = RelationTree::new(3, vec![(0, 1, -1), (1, 2, 1), (0, 2, 1)]).unwrap_err();
        assert!(e.to_string().contains("3 edges"), "{e}");
        assert!(RelationTree::new(3, vec![(0, 1, 0), (1, 2, 1)]).is_err());
        assert!(RelationTree::new(3, vec![(0, 1, 1), (1, 3, 1)]).is_err());
    }

    #[test]
    fn json_shape() {
        let t = tree(3, &[(0, 1, -1), (1, 2, 1)]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1,-1],[1,2,1]]}"#);
        assert_eq!(serde_json::from_str::<RelationTree>(&s).unwrap(), t);
        assert!(serde_json::from_str::<RelationTree>(r#"{"n":3,"edges":[[0,1,1]]}"#).is_err());
    }
}
