//! Prim-class heuristics: grow the assigned vertex set one vertex at a time.
//!
//! Every variant keeps `w(i, V1)` and `w(i, V2)` for each unassigned vertex
//! and updates them when a vertex is placed, so a run costs `O(n^2 + m)`.
//! The emitted relation tree is a double star: one negative edge between the
//! two side representatives and a positive leaf for every other vertex.
//!
//! Tie rules: the lowest vertex index wins a score tie, and a vertex with
//! `w(i, V1) == w(i, V2)` joins `V1`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, CutResult, Init};
use crate::error::{Error, Result};
use crate::graph::{Graph, SpinAssignment};
use crate::par::Exec;
use crate::rng;
use crate::tree::RelationTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Maximise `max{w(i,V1), w(i,V2)}`.
    BestIn,
    /// Minimise `min{w(i,V1), w(i,V2)}`.
    WorstOut,
    /// Maximise `|w(i,V1) - w(i,V2)|`.
    BestInWorstOut,
}

impl Criterion {
    fn algorithm(self) -> Algorithm {
        match self {
            Criterion::BestIn => Algorithm::Sg1,
            Criterion::WorstOut => Algorithm::Sg2,
            Criterion::BestInWorstOut => Algorithm::Sg3e,
        }
    }
}

/// Incremental state shared by the whole SG family.
struct Growth<'g> {
    g: &'g Graph,
    to_v1: Vec<f64>,
    to_v2: Vec<f64>,
    assigned: Vec<bool>,
    second: Vec<bool>,
    unassigned: Vec<usize>,
    rep1: usize,
    rep2: Option<usize>,
    tree: Vec<(usize, usize, i8)>,
    weight: f64,
}

impl<'g> Growth<'g> {
    fn new(g: &'g Graph, first: usize) -> Self {
        let n = g.n();
        let mut s = Growth {
            g,
            to_v1: vec![0.0; n],
            to_v2: vec![0.0; n],
            assigned: vec![false; n],
            second: vec![false; n],
            unassigned: (0..n).collect(),
            rep1: first,
            rep2: None,
            tree: Vec::with_capacity(n.saturating_sub(1)),
            weight: 0.0,
        };
        s.mark(first, false);
        s
    }

    fn mark(&mut self, i: usize, second: bool) {
        self.assigned[i] = true;
        self.second[i] = second;
        if let Ok(pos) = self.unassigned.binary_search(&i) {
            self.unassigned.remove(pos);
        }
        let acc = if second { &mut self.to_v2 } else { &mut self.to_v1 };
        if let Some(row) = self.g.dense_row(i) {
            // `i` itself is already assigned.
            for ((a, &w), &done) in acc.iter_mut().zip(row).zip(&self.assigned) {
                if !done {
                    *a += w;
                }
            }
            return;
        }
        for (v, w) in self.g.neighbors(i) {
            if !self.assigned[v] {
                acc[v] += w;
            }
        }
    }

    /// Places `i` and gains the weight of its edges into the other side.
    fn place(&mut self, i: usize, second: bool) {
        self.weight += if second { self.to_v1[i] } else { self.to_v2[i] };
        if second {
            match self.rep2 {
                Some(r) => self.tree.push((r, i, 1)),
                None => {
                    self.tree.push((self.rep1, i, -1));
                    self.rep2 = Some(i);
                }
            }
        } else {
            self.tree.push((self.rep1, i, 1));
        }
        self.mark(i, second);
    }

    fn place_greedy(&mut self, i: usize) {
        let second = self.to_v1[i] > self.to_v2[i];
        self.place(i, second);
    }

    fn select(&self, criterion: Criterion) -> usize {
        let mut best = self.unassigned[0];
        let mut best_score = self.score(best, criterion);
        for &i in &self.unassigned[1..] {
            let s = self.score(i, criterion);
            let better = match criterion {
                Criterion::WorstOut => s < best_score,
                _ => s > best_score,
            };
            if better {
                best = i;
                best_score = s;
            }
        }
        best
    }

    fn score(&self, i: usize, criterion: Criterion) -> f64 {
        let (a, b) = (self.to_v1[i], self.to_v2[i]);
        match criterion {
            Criterion::BestIn => a.max(b),
            Criterion::WorstOut => a.min(b),
            Criterion::BestInWorstOut => (a - b).abs(),
        }
    }

    fn finish(self, algorithm: Algorithm) -> CutResult {
        let spins = SpinAssignment::from_sides(&self.second);
        let tree = RelationTree::from_parts_unchecked(self.g.n(), self.tree);
        CutResult::new(algorithm, self.g, spins, Some(tree)).with_trace(self.weight)
    }
}

/// Sahni-Gonzalez in a fixed vertex order (identity when `order` is `None`).
pub fn sg(g: &Graph, order: Option<&[usize]>) -> Result<CutResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { need: 2, n });
    }
    let identity: Vec<usize>;
    let order = match order {
        Some(o) => {
            check_permutation(o, n)?;
            o
        }
        None => {
            identity = (0..n).collect();
            &identity
        }
    };
    let mut s = Growth::new(g, order[0]);
    s.place(order[1], true);
    for &i in &order[2..] {
        s.place_greedy(i);
    }
    Ok(s.finish(Algorithm::Sg))
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: order.len() });
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Graph(format!("vertex {v} repeated in order")));
        }
    }
    Ok(())
}

/// SG1 / SG2 / edge-initialised SG3: start from a maximum-weight edge.
pub fn sg_edge_init(g: &Graph, criterion: Criterion) -> Result<CutResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { need: 2, n });
    }
    let mut start: Option<(usize, usize, f64)> = None;
    for e in g.edges() {
        if start.is_none_or(|s| e.2 > s.2) {
            start = Some(e);
        }
    }
    let (i1, i2, _) = start.ok_or(Error::Edgeless)?;
    let mut s = Growth::new(g, i1);
    s.place(i2, true);
    while !s.unassigned.is_empty() {
        let i = s.select(criterion);
        s.place_greedy(i);
    }
    Ok(s.finish(criterion.algorithm()).with_init(Init::Edge(i1, i2)))
}

/// SG3 from a single start vertex `r` (`V1 = {r}`, `V2` empty).
pub fn sg3(g: &Graph, r: usize) -> Result<CutResult> {
    let n = g.n();
    if r >= n {
        return Err(Error::VertexOutOfRange { vertex: r, n });
    }
    let mut s = Growth::new(g, r);
    while !s.unassigned.is_empty() {
        let i = s.select(Criterion::BestInWorstOut);
        s.place_greedy(i);
    }
    Ok(s.finish(Algorithm::Sg3).with_init(Init::Vertex(r)))
}

/// Best of `sg3` over every start vertex; ties go to the smallest start.
pub fn sg3_d(g: &Graph, exec: Exec) -> Result<CutResult> {
    let runs = exec.map(g.n(), |r| sg3(g, r));
    let mut best = pick_best(runs)?;
    best.algorithm = Algorithm::Sg3d;
    Ok(best)
}

/// `floor(2 log2 n)`, at least one.
pub fn default_repeats(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    ((2.0 * (n as f64).log2()).floor() as usize).max(1)
}

/// `t` start vertices drawn from `0..n`, without replacement when `t <= n`.
pub fn random_starts(n: usize, t: usize, seed: u64) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let mut rng = rng::seeded(seed);
    if t <= n {
        rand::seq::index::sample(&mut rng, n, t).into_vec()
    } else {
        (0..t).map(|_| rng.random_range(0..n)).collect()
    }
}

/// Best of `sg3` over `t` random start vertices, drawn without replacement
/// when `t <= n`.
pub fn sg3_r(g: &Graph, seed: u64, t: Option<usize>, exec: Exec) -> Result<CutResult> {
    let n = g.n();
    let t = t.unwrap_or_else(|| default_repeats(n)).max(1);
    let starts = random_starts(n, t, seed);
    let runs = exec.map(starts.len(), |i| sg3(g, starts[i]));
    let mut best = pick_best(runs)?;
    best.algorithm = Algorithm::Sg3r;
    Ok(best.with_seed(seed))
}

fn start_vertex(r: &CutResult) -> usize {
    match r.init {
        Some(Init::Vertex(v)) => v,
        _ => usize::MAX,
    }
}

fn pick_best(runs: Vec<Result<CutResult>>) -> Result<CutResult> {
    let mut best: Option<CutResult> = None;
    for run in runs {
        let run = run?;
        let better = match &best {
            None => true,
            Some(b) => {
                run.weight > b.weight
                    || (run.weight == b.weight && start_vertex(&run) < start_vertex(b))
            }
        };
        if better {
            best = Some(run);
        }
    }
    best.ok_or(Error::TooFewVertices { need: 1, n: 0 })
}
