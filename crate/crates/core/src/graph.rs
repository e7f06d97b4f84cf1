//! Undirected weighted graphs and spin-valued cut assignments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected weighted simple graph on vertices `0..n`.
///
/// Complete graphs are stored as a dense symmetric matrix; everything else as
/// a compressed adjacency list. Both expose the same read-only API and edges
/// always iterate in lexicographic `(u, v)` order with `u < v`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    m: usize,
    storage: Storage,
}

#[derive(Clone, Debug)]
enum Storage {
    /// Row-major `n x n`, diagonal unused.
    Complete(Vec<f64>),
    Sparse {
        offsets: Vec<usize>,
        adj: Vec<(usize, f64)>,
    },
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints may come in either order.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::Graph("graph needs at least one vertex".into()));
        }
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            if !w.is_finite() {
                return Err(Error::Graph(format!("non-finite weight on ({u}, {v})")));
            }
            list.push((u.min(v), u.max(v), w));
        }
        list.sort_by_key(|e| (e.0, e.1));
        if let Some(d) = list.windows(2).find(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1)) {
            return Err(Error::Graph(format!("duplicate edge ({}, {})", d[0].0, d[0].1)));
        }

        let mut degree = vec![0usize; n];
        for &(u, v, _) in &list {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![(0usize, 0.0f64); offsets[n]];
        // Lexicographic input order keeps every row sorted by neighbour.
        for &(u, v, w) in &list {
            adj[fill[u]] = (v, w);
            fill[u] += 1;
        }
        for &(u, v, w) in &list {
            adj[fill[v]] = (u, w);
            fill[v] += 1;
        }
        for u in 0..n {
            adj[offsets[u]..offsets[u + 1]].sort_by_key(|e| e.0);
        }
        Ok(Graph {
            n,
            m: list.len(),
            storage: Storage::Sparse { offsets, adj },
        })
    }

    /// Complete graph `K_n` whose weights are produced in lexicographic pair
    /// order by `weight(u, v)`.
    pub fn complete_with<F>(n: usize, mut weight: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> f64,
    {
        if n == 0 {
            return Err(Error::Graph("graph needs at least one vertex".into()));
        }
        let mut w = vec![0.0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let x = weight(u, v);
                if !x.is_finite() {
                    return Err(Error::Graph(format!("non-finite weight on ({u}, {v})")));
                }
                w[u * n + v] = x;
                w[v * n + u] = x;
            }
        }
        Ok(Graph {
            n,
            m: n * (n - 1) / 2,
            storage: Storage::Complete(w),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.storage, Storage::Complete(_))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.n || v >= self.n || u == v {
            return None;
        }
        match &self.storage {
            Storage::Complete(w) => Some(w[u * self.n + v]),
            Storage::Sparse { offsets, adj } => {
                let row = &adj[offsets[u]..offsets[u + 1]];
                row.binary_search_by_key(&v, |e| e.0).ok().map(|i| row[i].1)
            }
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        match &self.storage {
            Storage::Complete(_) => self.n - 1,
            Storage::Sparse { offsets, .. } => offsets[u + 1] - offsets[u],
        }
    }

    /// Neighbours of `u` with edge weights, in increasing vertex order.
    pub fn neighbors(&self, u: usize) -> Neighbors<'_> {
        match &self.storage {
            Storage::Complete(w) => Neighbors::Complete {
                row: &w[u * self.n..(u + 1) * self.n],
                skip: u,
                pos: 0,
            },
            Storage::Sparse { offsets, adj } => {
                Neighbors::Sparse(adj[offsets[u]..offsets[u + 1]].iter())
            }
        }
    }

    /// Row `u` of the dense matrix for complete graphs; the diagonal entry is 0.
    pub fn dense_row(&self, u: usize) -> Option<&[f64]> {
        match &self.storage {
            Storage::Complete(w) => Some(&w[u * self.n..(u + 1) * self.n]),
            Storage::Sparse { .. } => None,
        }
    }

    /// Neighbours `v > u` of `u`, in increasing order.
    fn neighbors_above(&self, u: usize) -> Neighbors<'_> {
        match &self.storage {
            Storage::Complete(w) => Neighbors::Complete {
                row: &w[u * self.n..(u + 1) * self.n],
                skip: usize::MAX,
                pos: u + 1,
            },
            Storage::Sparse { offsets, adj } => {
                let row = &adj[offsets[u]..offsets[u + 1]];
                let start = row.partition_point(|e| e.0 <= u);
                Neighbors::Sparse(row[start..].iter())
            }
        }
    }

    /// All edges `(u, v, w)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors_above(u).map(move |(v, w)| (u, v, w)))
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().fold(0.0, |acc, e| acc + e.2)
    }

    /// `sum |w_uv|`, the natural scale for relative tolerances on signed graphs.
    pub fn abs_weight(&self) -> f64 {
        self.edges().fold(0.0, |acc, e| acc + e.2.abs())
    }

    pub fn has_negative_weight(&self) -> bool {
        self.edges().any(|e| e.2 < 0.0)
    }

    pub fn cut_weight(&self, z: &SpinAssignment) -> Result<f64> {
        if z.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        let s = z.as_slice();
        if let Storage::Complete(w) = &self.storage {
            let mut total = 0.0;
            for u in 0..self.n {
                let row = &w[u * self.n..(u + 1) * self.n];
                for v in u + 1..self.n {
                    if s[u] != s[v] {
                        total += row[v];
                    }
                }
            }
            return Ok(total);
        }
        Ok(self
            .edges()
            .filter(|&(u, v, _)| s[u] != s[v])
            .fold(0.0, |acc, e| acc + e.2))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.edges().eq(other.edges())
    }
}

pub enum Neighbors<'a> {
    Complete {
        row: &'a [f64],
        skip: usize,
        pos: usize,
    },
    Sparse(std::slice::Iter<'a, (usize, f64)>),
}

impl Iterator for Neighbors<'_> {
    type Item = (usize, f64);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        match self {
            Neighbors::Complete { row, skip, pos } => {
                if *pos == *skip {
                    *pos += 1;
                }
                let v = *pos;
                let w = *row.get(v)?;
                *pos += 1;
                Some((v, w))
            }
            Neighbors::Sparse(it) => it.next().copied(),
        }
    }
}

pub fn total_weight(g: &Graph) -> f64 {
    g.total_weight()
}

pub fn cut_weight(g: &Graph, z: &SpinAssignment) -> Result<f64> {
    g.cut_weight(z)
}

/// One spin `z_i in {-1, +1}` per vertex. `z` and `-z` describe the same cut.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SpinAssignment(Vec<i8>);

impl SpinAssignment {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some(i) = spins.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::Graph(format!("spin {} at vertex {i} is not +-1", spins[i])));
        }
        Ok(SpinAssignment(spins))
    }

    pub fn all_up(n: usize) -> Self {
        SpinAssignment(vec![1; n])
    }

    /// `true` marks the second side (`z = -1`).
    pub fn from_sides(second: &[bool]) -> Self {
        SpinAssignment(second.iter().map(|&b| if b { -1 } else { 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        SpinAssignment(self.0.iter().map(|&s| -s).collect())
    }

    /// Representative with `z_0 = +1`.
    pub fn canonical(mut self) -> Self {
        if self.0.first() == Some(&-1) {
            self.0.iter_mut().for_each(|s| *s = -*s);
        }
        self
    }

    /// Whether both assignments induce the same bipartition.
    pub fn same_cut(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
            && (self.0 == other.0 || self.0.iter().zip(&other.0).all(|(a, b)| a == &-b))
    }

    /// `(side with z = +1, side with z = -1)`.
    pub fn partition(&self) -> (Vec<usize>, Vec<usize>) {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (i, &s) in self.0.iter().enumerate() {
            if s == 1 {
                up.push(i)
            } else {
                down.push(i)
            }
        }
        (up, down)
    }
}

impl TryFrom<Vec<i8>> for SpinAssignment {
    type Error = Error;

    fn try_from(v: Vec<i8>) -> Result<Self> {
        SpinAssignment::new(v)
    }
}

impl From<SpinAssignment> for Vec<i8> {
    fn from(z: SpinAssignment) -> Self {
        z.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap()
    }

    fn spins(v: &[i8]) -> SpinAssignment {
        SpinAssignment::new(v.to_vec()).unwrap()
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(k3().total_weight(), 3.0);
        assert_eq!(Graph::from_edges(2, [(0, 1, 5.0)]).unwrap().total_weight(), 5.0);
        assert_eq!(Graph::from_edges(4, []).unwrap().total_weight(), 0.0);
    }

    #[test]
    fn cut_weight_examples() {
        assert_eq!(k3().cut_weight(&spins(&[1, 1, 1])).unwrap(), 0.0);
        assert_eq!(k3().cut_weight(&spins(&[1, 1, -1])).unwrap(), 2.0);
        assert_eq!(triangle().cut_weight(&spins(&[-1, 1, 1])).unwrap(), 5.0);
    }

    #[test]
    fn cut_weight_rejects_length_mismatch() {
        assert!(matches!(
            k3().cut_weight(&spins(&[1, -1])),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn construction_errors() {
        assert!(Graph::from_edges(3, [(0, 0, 1.0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3, 1.0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1, f64::NAN)]).is_err());
        assert!(Graph::from_edges(0, []).is_err());
    }

    #[test]
    fn dense_and_sparse_agree() {
        let w = |u: usize, v: usize| (u * 7 + v * 3) as f64 * 0.25 - 1.0;
        let dense = Graph::complete_with(6, w).unwrap();
        let sparse = Graph::from_edges(
            6,
            (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v, w(u, v)))),
        )
        .unwrap();
        assert_eq!(dense, sparse);
        assert!(dense.is_complete() && !sparse.is_complete());
        for u in 0..6 {
            assert_eq!(
                dense.neighbors(u).collect::<Vec<_>>(),
                sparse.neighbors(u).collect::<Vec<_>>()
            );
            for v in 0..6 {
                assert_eq!(dense.weight(u, v), sparse.weight(u, v));
                assert_eq!(dense.weight(u, v), dense.weight(v, u));
            }
        }
    }

    #[test]
    fn spin_helpers() {
        assert!(SpinAssignment::new(vec![1, 0]).is_err());
        let z = spins(&[-1, 1, -1]);
        assert_eq!(z.clone().canonical(), spins(&[1, -1, 1]));
        assert!(z.same_cut(&z.negated()));
        assert!(!z.same_cut(&spins(&[1, 1, 1])));
        assert_eq!(z.partition(), (vec![1], vec![0, 2]));
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, "[-1,1,-1]");
        assert!(serde_json::from_str::<SpinAssignment>("[1,2]").is_err());
    }
}
