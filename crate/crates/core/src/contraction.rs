//! Edge-contraction engine shared by the Kruskal-class heuristics.
//!
//! Current weights live in a dense `n x n` matrix where `NaN` marks a pair
//! that is not an edge of the contracted graph. Each alive cluster keeps a
//! label pointing at its best partner under the active selection rule, and
//! the rows sit in a max-heap keyed by an upper bound on their best key.
//! A contraction rewrites one matrix row. Rows whose entry only got worse are
//! marked stale and rescanned when they reach the top of the heap, so a whole
//! run stays close to `O(n^2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::RelationTree;

/// Largest `n` the dense working matrix is allowed to cover.
pub const MAX_CONTRACTION_N: usize = 20_000;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Select {
    /// Largest `|w|`.
    AbsMax,
    /// Smallest `w`.
    Min,
    /// Largest `w`.
    Max,
    /// Lexicographically first pair.
    Lowest,
}

impl Select {
    #[inline]
    fn key(self, w: f64) -> f64 {
        match self {
            Select::AbsMax => w.abs(),
            Select::Min => -w,
            Select::Max => w,
            Select::Lowest => 0.0,
        }
    }
}

/// One contraction: cluster `removed` is shifted onto `kept` after the pair
/// receives relation `sign`. `current` is the pair's current weight (0 when
/// the clusters were not adjacent).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub removed: usize,
    pub kept: usize,
    pub current: f64,
    pub sign: i8,
}

pub(crate) struct Contractor {
    n: usize,
    w: Vec<f64>,
    alive: Vec<usize>,
    /// Best partner of each row, valid unless the row is stale.
    best: Vec<usize>,
    /// Upper bound on the selection key of every entry in the row; equal to
    /// the key at `best` when the row is not stale.
    bound: Vec<f64>,
    stale: Vec<bool>,
    /// Rows with an active edge, as a binary max-heap (see `ahead`).
    heap: Vec<usize>,
    slot: Vec<usize>,
    select: Select,
    active: usize,
    total: f64,
    steps: Vec<ContractionStep>,
}

impl Contractor {
    pub(crate) fn new(g: &Graph, select: Select) -> Result<Self> {
        let n = g.n();
        if n > MAX_CONTRACTION_N {
            return Err(Error::TooLarge {
                what: "edge contraction",
                max: MAX_CONTRACTION_N,
                n,
            });
        }
        let mut w = vec![f64::NAN; n * n];
        for (u, v, x) in g.edges() {
            w[u * n + v] = x;
            w[v * n + u] = x;
        }
        let mut c = Contractor {
            n,
            w,
            alive: (0..n).collect(),
            best: vec![NONE; n],
            bound: vec![f64::NEG_INFINITY; n],
            stale: vec![false; n],
            heap: Vec::with_capacity(n),
            slot: vec![NONE; n],
            select,
            active: g.m(),
            total: g.total_weight(),
            steps: Vec::with_capacity(n.saturating_sub(1)),
        };
        for k in 0..n {
            c.recompute(k);
        }
        Ok(c)
    }

    pub(crate) fn active_edges(&self) -> usize {
        self.active
    }

    pub(crate) fn set_select(&mut self, select: Select) {
        self.select = select;
        for idx in 0..self.alive.len() {
            let k = self.alive[idx];
            self.recompute(k);
        }
    }

    #[inline]
    fn at(&self, a: usize, b: usize) -> f64 {
        self.w[a * self.n + b]
    }

    fn recompute(&mut self, k: usize) {
        let row = &self.w[k * self.n..(k + 1) * self.n];
        let mut best = NONE;
        let mut best_key = f64::NEG_INFINITY;
        for &x in &self.alive {
            let v = row[x];
            if x == k || v.is_nan() {
                continue;
            }
            let key = self.select.key(v);
            if best == NONE || key > best_key {
                best = x;
                best_key = key;
            }
        }
        self.best[k] = best;
        self.bound[k] = best_key;
        self.stale[k] = false;
        if best == NONE {
            self.heap_remove(k);
        } else {
            self.heap_fix(k);
        }
    }

    /// Pair used to order rows with equal bounds. A stale row may end up at
    /// any pair containing `k`, so it sorts at the smallest such pair.
    fn order_pair(&self, k: usize) -> (usize, usize) {
        if self.stale[k] {
            (0, k.max(1))
        } else {
            let b = self.best[k];
            (k.min(b), k.max(b))
        }
    }

    /// Whether row `a` belongs above row `b`: larger bound, then smaller pair,
    /// then stale rows first.
    fn ahead(&self, a: usize, b: usize) -> bool {
        let (ka, kb) = (self.bound[a], self.bound[b]);
        if ka != kb {
            return ka > kb;
        }
        let (pa, pb) = (self.order_pair(a), self.order_pair(b));
        if pa != pb {
            return pa < pb;
        }
        (self.stale[a], b) > (self.stale[b], a)
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.ahead(self.heap[i], self.heap[parent]) {
                break;
            }
            self.heap_swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut top = i;
            if l < self.heap.len() && self.ahead(self.heap[l], self.heap[top]) {
                top = l;
            }
            if r < self.heap.len() && self.ahead(self.heap[r], self.heap[top]) {
                top = r;
            }
            if top == i {
                break;
            }
            self.heap_swap(i, top);
            i = top;
        }
    }

    fn heap_swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.slot[self.heap[i]] = i;
        self.slot[self.heap[j]] = j;
    }

    fn heap_fix(&mut self, k: usize) {
        let i = self.slot[k];
        if i == NONE {
            self.slot[k] = self.heap.len();
            self.heap.push(k);
            self.sift_up(self.heap.len() - 1);
        } else {
            self.sift_up(i);
            self.sift_down(self.slot[k]);
        }
    }

    fn heap_remove(&mut self, k: usize) {
        let i = self.slot[k];
        if i == NONE {
            return;
        }
        let last = self.heap.len() - 1;
        self.heap_swap(i, last);
        self.heap.pop();
        self.slot[k] = NONE;
        if i < self.heap.len() {
            let moved = self.heap[i];
            self.sift_up(i);
            self.sift_down(self.slot[moved]);
        }
    }

    /// Best active pair `(a, b, current)` with `a < b`; ties go to the
    /// lexicographically smallest pair of labels.
    pub(crate) fn next_edge(&mut self) -> Option<(usize, usize, f64)> {
        loop {
            let &k = self.heap.first()?;
            if self.stale[k] {
                self.recompute(k);
                continue;
            }
            let b = self.best[k];
            return Some((k.min(b), k.max(b), self.at(k, b)));
        }
    }

    /// Row `k`'s entry at `j` changed to `new` (`decreased` in key).
    fn note_entry(&mut self, k: usize, j: usize, new: f64, decreased: bool) {
        let key = self.select.key(new);
        let b = self.best[k];
        if b == NONE || key > self.bound[k] || (key == self.bound[k] && !self.stale[k] && j < b) {
            self.best[k] = j;
            self.bound[k] = key;
            self.stale[k] = false;
            self.heap_fix(k);
        } else if b == j && decreased {
            self.stale[k] = true;
            self.heap_fix(k);
        }
    }

    /// Fixes the relation of `(remove, keep)` to `sign`, multiplies the other
    /// edges of `remove` by `sign` and shifts them onto `keep`, summing
    /// parallel edges.
    pub(crate) fn contract(&mut self, remove: usize, keep: usize, sign: i8) {
        let n = self.n;
        let (i, j) = (remove, keep);
        let cur = self.at(i, j);
        if !cur.is_nan() {
            self.active -= 1;
        }
        self.steps.push(ContractionStep {
            removed: i,
            kept: j,
            current: if cur.is_nan() { 0.0 } else { cur },
            sign,
        });

        if let Ok(pos) = self.alive.binary_search(&i) {
            self.alive.remove(pos);
        }
        self.heap_remove(i);
        let s = f64::from(sign);
        for idx in 0..self.alive.len() {
            let k = self.alive[idx];
            if k == j {
                continue;
            }
            let wik = self.w[i * n + k];
            if wik.is_nan() {
                continue;
            }
            let old = self.w[j * n + k];
            let new = if old.is_nan() {
                s * wik
            } else {
                self.active -= 1;
                old + s * wik
            };
            self.w[j * n + k] = new;
            self.w[k * n + j] = new;

            if self.best[k] == i {
                // The entry at i is gone; the bound still covers the row.
                self.stale[k] = true;
                self.heap_fix(k);
            }
            let decreased = !old.is_nan() && self.select.key(new) < self.select.key(old);
            self.note_entry(k, j, new, decreased);
        }
        self.recompute(j);
    }

    /// Joins whatever clusters remain with `+1` relations, in label order.
    pub(crate) fn link_remaining(&mut self) {
        while self.alive.len() > 1 {
            let (a, b) = (self.alive[0], self.alive[1]);
            self.contract(a, b, 1);
        }
    }

    /// `sum w / 2 - sum sign * current / 2`: the cut weight implied by the
    /// recorded steps.
    pub(crate) fn implied_weight(&self) -> f64 {
        let mut acc = 0.5 * self.total;
        for st in &self.steps {
            acc += 0.5 * (-f64::from(st.sign) * st.current);
        }
        acc
    }

    pub(crate) fn finish(self) -> (RelationTree, Vec<ContractionStep>, f64) {
        let weight = self.implied_weight();
        let edges = self
            .steps
            .iter()
            .map(|s| (s.removed.min(s.kept), s.removed.max(s.kept), s.sign))
            .collect();
        (RelationTree::from_parts_unchecked(self.n, edges), self.steps, weight)
    }

    #[cfg(test)]
    pub(crate) fn pair_weight(&self, a: usize, b: usize) -> Option<f64> {
        Some(self.at(a, b)).filter(|v| !v.is_nan())
    }

    /// Sum of current weights of `k`'s active edges, excluding the one to `other`.
    pub(crate) fn row_sum_except(&self, k: usize, other: usize) -> f64 {
        self.alive
            .iter()
            .filter(|&&x| x != k && x != other)
            .map(|&x| self.at(k, x))
            .filter(|v| !v.is_nan())
            .sum()
    }
}
