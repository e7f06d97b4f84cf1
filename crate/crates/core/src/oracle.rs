//! Exact MAX-CUT by exhaustive enumeration, and SK energies.
//!
//! Vertex 0 is pinned to `+1`; the other `n - 1` spins form an index whose
//! top bits pick a chunk and whose low bits are walked in Gray-code order, so
//! each step flips one spin and costs `O(deg)`. Incremental sums drift, so
//! every configuration within a small tolerance of the running best is kept
//! and re-scored with [`Graph::cut_weight`] at the end of its chunk. The
//! reported optimum is therefore exactly the value `cut_weight` assigns to
//! the witness, and no heuristic cut can score above it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SpinAssignment};
use crate::par::Exec;

pub const MAX_ORACLE_N: usize = 24;

const MAX_CHUNK_BITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub optimum: f64,
    pub witness: SpinAssignment,
    pub enumerated: u64,
}

pub fn brute_force(g: &Graph) -> Result<OracleResult> {
    brute_force_with(g, Exec::default())
}

pub fn brute_force_with(g: &Graph, exec: Exec) -> Result<OracleResult> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(Error::TooLarge {
            what: "brute-force oracle",
            max: MAX_ORACLE_N,
            n,
        });
    }
    if n <= 1 {
        return Ok(OracleResult {
            optimum: 0.0,
            witness: SpinAssignment::all_up(n),
            enumerated: 1,
        });
    }
    let free = n - 1;
    let high = free.min(MAX_CHUNK_BITS);
    let low = free - high;
    let adj: Vec<Vec<(usize, f64)>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let tol = 1e-9 * (g.abs_weight() + 1.0);

    let per_chunk = exec.map(1usize << high, |chunk| best_in_chunk(g, &adj, chunk, low, tol));
    let mut best: Option<(f64, usize, u64)> = None;
    for (chunk, (w, pos)) in per_chunk.into_iter().enumerate() {
        if best.is_none_or(|(bw, _, _)| w > bw) {
            best = Some((w, chunk, pos));
        }
    }
    let (optimum, chunk, pos) = best.expect("at least one chunk");
    Ok(OracleResult {
        optimum,
        witness: spins_at(n, chunk, low, pos),
        enumerated: 1u64 << free,
    })
}

/// Spins for Gray-code position `pos` of `chunk`: bit `v - 1` of the index
/// set means `z_v = -1`.
fn spins_at(n: usize, chunk: usize, low: usize, pos: u64) -> SpinAssignment {
    let index = ((chunk as u64) << low) | (pos ^ (pos >> 1));
    let mut z = vec![1i8; n];
    for (v, s) in z.iter_mut().enumerate().skip(1) {
        if (index >> (v - 1)) & 1 == 1 {
            *s = -1;
        }
    }
    SpinAssignment::new(z).expect("+-1 spins")
}

/// Best exact `(weight, position)` within a chunk; ties keep the first position.
fn best_in_chunk(g: &Graph, adj: &[Vec<(usize, f64)>], chunk: usize, low: usize, tol: f64) -> (f64, u64) {
    let n = g.n();
    let start = spins_at(n, chunk, low, 0);
    let mut z: Vec<f64> = start.as_slice().iter().map(|&s| f64::from(s)).collect();
    // field[v] = sum_u w_uv z_u; flipping v changes the cut by z_v * field[v].
    let mut field: Vec<f64> = (0..n).map(|v| adj[v].iter().map(|&(u, w)| w * z[u]).sum()).collect();
    let mut cut = g.cut_weight(&start).expect("sized spins");
    let mut running = cut;
    let mut candidates: Vec<(u64, f64)> = vec![(0, cut)];

    for pos in 1u64..(1u64 << low) {
        let v = pos.trailing_zeros() as usize + 1;
        cut += z[v] * field[v];
        let old = z[v];
        z[v] = -old;
        for &(u, w) in &adj[v] {
            field[u] -= 2.0 * w * old;
        }
        if cut >= running - tol {
            if cut > running {
                running = cut;
                candidates.retain(|&(_, c)| c >= running - tol);
            }
            candidates.push((pos, cut));
        }
    }

    let mut best: Option<(f64, u64)> = None;
    for (pos, _) in candidates {
        let w = g.cut_weight(&spins_at(n, chunk, low, pos)).expect("sized spins");
        if best.is_none_or(|(bw, _)| w > bw) {
            best = Some((w, pos));
        }
    }
    best.expect("chunk has a candidate")
}

/// `E = w_tot - 2 w`, the SK energy `sum w_uv z_u z_v` of a cut of weight `w`.
pub fn sk_energy(g: &Graph, cut_weight: f64) -> f64 {
    g.total_weight() - 2.0 * cut_weight
}

/// `E / n^{3/2}`.
pub fn regularized_energy(g: &Graph, cut_weight: f64) -> f64 {
    sk_energy(g, cut_weight) / (g.n() as f64).powf(1.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1.0))).unwrap()
    }

    #[test]
    fn examples() {
        let k4 = Graph::complete_with(4, |_, _| 1.0).unwrap();
        let r = brute_force(&k4).unwrap();
        assert_eq!(r.optimum, 4.0);
        assert_eq!(r.enumerated, 8);
        assert_eq!(r.witness.partition().0.len(), 2);

        let c5 = unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(brute_force(&c5).unwrap().optimum, 4.0);

        let tri = Graph::from_edges(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap();
        let r = brute_force(&tri).unwrap();
        assert_eq!(r.optimum, 5.0);
        assert_eq!(r.witness.partition(), (vec![0], vec![1, 2]));
    }

    #[test]
    fn witness_achieves_optimum() {
        let g = Graph::complete_with(13, |u, v| ((u * 7 + v * 13) % 11) as f64 * 0.1 - 0.4).unwrap();
        let r = brute_force(&g).unwrap();
        assert_eq!(g.cut_weight(&r.witness).unwrap(), r.optimum);
        assert_eq!(r.witness.as_slice()[0], 1);
        assert_eq!(r.enumerated, 1 << 12);
        assert_eq!(r, brute_force_with(&g, Exec::Sequential).unwrap());
    }

    #[test]
    fn matches_naive_enumeration() {
        let g = Graph::complete_with(11, |u, v| ((u * 3 + v * 5) % 7) as f64 - 2.5).unwrap();
        let mut best = f64::NEG_INFINITY;
        for x in 0u32..(1 << 10) {
            let z: Vec<i8> = (0..11).map(|v| if v > 0 && (x >> (v - 1)) & 1 == 1 { -1 } else { 1 }).collect();
            best = best.max(g.cut_weight(&SpinAssignment::new(z).unwrap()).unwrap());
        }
        assert_eq!(brute_force(&g).unwrap().optimum, best);
    }

    #[test]
    fn tiny_graphs() {
        let r = brute_force(&Graph::from_edges(1, []).unwrap()).unwrap();
        assert_eq!((r.optimum, r.enumerated), (0.0, 1));
        let r = brute_force(&unit(2, &[(0, 1)])).unwrap();
        assert_eq!((r.optimum, r.enumerated), (1.0, 2));
    }

    #[test]
    fn refuses_large_graphs() {
        let g = Graph::from_edges(25, []).unwrap();
        assert!(matches!(brute_force(&g), Err(Error::TooLarge { max: 24, .. })));
    }

    #[test]
    fn energies() {
        let empty = Graph::from_edges(3, []).unwrap();
        assert_eq!(sk_energy(&empty, 3.0), -6.0);
        let k3 = Graph::complete_with(3, |_, _| 1.0).unwrap();
        assert_eq!(sk_energy(&k3, 2.0), -1.0);
        assert_eq!(sk_energy(&k3, 0.0), 3.0);
        assert!((regularized_energy(&k3, 2.0) + 1.0 / 3f64.powf(1.5)).abs() < 1e-15);
    }
}
