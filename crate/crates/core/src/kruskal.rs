//! Kruskal-class heuristics: pick edges one at a time and fix their relation.
//!
//! A cluster of contracted vertices carries the label of the vertex it was
//! last shifted onto. Edge selection ties go to the lexicographically
//! smallest `(min, max)` pair of labels, and unless stated otherwise the lower
//! label is shifted onto the higher one. Clusters left over when no edge
//! remains (disconnected inputs) are joined by `+1` relations in label order.

use rand::seq::SliceRandom;

use crate::algorithm::{Algorithm, CutResult};
use crate::contraction::{Contractor, Select};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;
use crate::tree::RelationTree;

pub use crate::contraction::{ContractionStep, MAX_CONTRACTION_N};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShiftDirection {
    #[default]
    LowerIntoHigher,
    HigherIntoLower,
}

impl ShiftDirection {
    /// `(removed, kept)` for the selected pair `a < b`.
    fn split(self, a: usize, b: usize) -> (usize, usize) {
        match self {
            ShiftDirection::LowerIntoHigher => (a, b),
            ShiftDirection::HigherIntoLower => (b, a),
        }
    }
}

/// A contraction run with its step log.
#[derive(Clone, Debug)]
pub struct ContractionRun {
    pub result: CutResult,
    pub steps: Vec<ContractionStep>,
}

/// De Quincey: random spanning forest of `g`, every forest edge cut.
pub fn de_quincey(g: &Graph, seed: u64) -> Result<CutResult> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(&mut rng::seeded(seed));
    Ok(de_quincey_in_order(g, &order)?.with_seed(seed))
}

/// De Quincey with an explicit edge order (indices into `g.edges()`).
/// Components of the forest are chained through their smallest vertices with
/// `-1` relations.
pub fn de_quincey_in_order(g: &Graph, order: &[usize]) -> Result<CutResult> {
    let n = g.n();
    let edges: Vec<(usize, usize, f64)> = g.edges().collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut forest = Vec::with_capacity(n.saturating_sub(1));
    for &idx in order {
        let &(u, v, _) = edges.get(idx).ok_or(Error::Graph(format!("edge index {idx} out of range")))?;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b)] = a.min(b);
            forest.push((u, v, -1));
        }
    }
    let mut roots: Vec<usize> = (0..n).filter(|&x| find(&mut parent, x) == x).collect();
    roots.sort_unstable();
    forest.extend(roots.windows(2).map(|w| (w[0], w[1], -1)));
    let tree = RelationTree::from_parts_unchecked(n, forest);
    let spins = tree.scan();
    Ok(CutResult::new(Algorithm::Dq, g, spins, Some(tree)))
}

fn finish(algorithm: Algorithm, g: &Graph, c: Contractor) -> ContractionRun {
    let (tree, steps, implied) = c.finish();
    let spins = tree.scan();
    let result = CutResult::new(algorithm, g, spins, Some(tree)).with_trace(implied);
    ContractionRun { result, steps }
}

/// Edge contraction (worst-out): contract the minimum-weight edge with a `+1`
/// relation until one edge is left, which is cut.
pub fn ec(g: &Graph) -> Result<CutResult> {
    ec_traced(g).map(|r| r.result)
}

pub fn ec_traced(g: &Graph) -> Result<ContractionRun> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut c = Contractor::new(g, Select::Min)?;
    while c.active_edges() > 1 {
        let (a, b, _) = c.next_edge().expect("active edges remain");
        c.contract(a, b, 1);
    }
    if let Some((a, b, _)) = c.next_edge() {
        c.contract(a, b, -1);
    }
    c.link_remaining();
    Ok(finish(Algorithm::Ec, g, c))
}

/// Differencing edge contraction (best-in).
///
/// While a positive edge remains, the heaviest one is cut and the endpoint
/// whose removal leaves the larger total weight is sign-reversed and shifted
/// (the lower label on a tie). The remaining nonpositive edges are then
/// contracted with `+1` relations in lexicographic order.
pub fn dec(g: &Graph) -> Result<CutResult> {
    dec_traced(g).map(|r| r.result)
}

pub fn dec_traced(g: &Graph) -> Result<ContractionRun> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut c = Contractor::new(g, Select::Max)?;
    while let Some((a, b, w)) = c.next_edge() {
        if w <= 0.0 {
            break;
        }
        // Shifting x leaves total - w_ab - 2 * (sum of x's other edges).
        let (sa, sb) = (c.row_sum_except(a, b), c.row_sum_except(b, a));
        let (remove, keep) = if sb < sa { (b, a) } else { (a, b) };
        c.contract(remove, keep, -1);
    }
    c.set_select(Select::Lowest);
    while let Some((a, b, _)) = c.next_edge() {
        c.contract(a, b, 1);
    }
    c.link_remaining();
    Ok(finish(Algorithm::Dec, g, c))
}

/// Signed edge contraction (best-in-worst-out): contract the edge of largest
/// `|current weight|` with relation `-sgn(current)` (`sgn(0) = +1`).
pub fn sec(g: &Graph) -> Result<CutResult> {
    sec_traced(g, ShiftDirection::default()).map(|r| r.result)
}

pub fn sec_traced(g: &Graph, direction: ShiftDirection) -> Result<ContractionRun> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut c = Contractor::new(g, Select::AbsMax)?;
    while let Some((a, b, w)) = c.next_edge() {
        let sign = if w >= 0.0 { -1 } else { 1 };
        let (remove, keep) = direction.split(a, b);
        c.contract(remove, keep, sign);
    }
    c.link_remaining();
    Ok(finish(Algorithm::Sec, g, c))
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

    fn single(w: f64) -> Graph {
        Graph::from_edges(2, [(0, 1, w)]).unwrap()
    }

    fn tree_of(r: &CutResult) -> Vec<(usize, usize, i8)> {
        r.tree.as_ref().unwrap().edges().to_vec()
    }

    #[test]
    fn de_quincey_examples() {
        // g.edges() order on K3: (0,1), (0,2), (1,2).
        let r = de_quincey_in_order(&k3(), &[0, 1, 2]).unwrap();
        assert_eq!(r.spins.partition(), (vec![0], vec![1, 2]));
        assert_eq!(r.weight, 2.0);
        assert_eq!(de_quincey(&single(5.0), 3).unwrap().weight, 5.0);
        let star = Graph::from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        for seed in 0..20 {
            assert_eq!(de_quincey(&star, seed).unwrap().weight, 3.0);
        }
    }

    #[test]
    fn de_quincey_completes_components() {
        let g = Graph::from_edges(5, [(0, 1, 1.0), (3, 4, 1.0)]).unwrap();
        let r = de_quincey(&g, 0).unwrap();
        assert_eq!(r.weight, 2.0);
        assert_eq!(r.tree.unwrap().negative_edges(), 4);
        assert_eq!(de_quincey(&Graph::from_edges(1, []).unwrap(), 0).unwrap().weight, 0.0);
    }

    #[test]
    fn ec_examples() {
        let r = ec(&triangle()).unwrap();
        assert_eq!(tree_of(&r), vec![(1, 2, 1), (0, 2, -1)]);
        assert_eq!(r.spins.partition(), (vec![0], vec![1, 2]));
        assert_eq!(r.weight, 5.0);

        assert_eq!(ec(&single(5.0)).unwrap().weight, 5.0);

        // Unit path: the tie picks (0,1) with +1, leaving (1,2) to be cut.
        let path = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let r = ec(&path).unwrap();
        assert_eq!(tree_of(&r), vec![(0, 1, 1), (1, 2, -1)]);
        assert_eq!(r.weight, 1.0);
    }

    #[test]
    fn dec_examples() {
        // Shifting 0 would leave total -1, shifting 1 leaves +1: vertex 1 moves,
        // the merged edge (0,2) = 2 - 1 = 1 is still positive and gets cut.
        let run = dec_traced(&triangle()).unwrap();
        assert_eq!(tree_of(&run.result), vec![(0, 1, -1), (0, 2, -1)]);
        assert_eq!(run.steps[0].removed, 1);
        assert_eq!(run.steps[1].current, 1.0);
        assert_eq!(run.result.weight, 5.0);

        let r = dec(&single(5.0)).unwrap();
        assert_eq!((tree_of(&r), r.weight), (vec![(0, 1, -1)], 5.0));
        let r = dec(&single(-1.0)).unwrap();
        assert_eq!((tree_of(&r), r.weight), (vec![(0, 1, 1)], 0.0));
    }

    #[test]
    fn sec_examples() {
        let run = sec_traced(&triangle(), ShiftDirection::default()).unwrap();
        assert_eq!(tree_of(&run.result), vec![(0, 1, -1), (1, 2, 1)]);
        let currents: Vec<f64> = run.steps.iter().map(|s| s.current).collect();
        assert_eq!(currents, vec![3.0, -1.0]);
        assert_eq!(run.result.weight, 5.0);
        assert_eq!(run.result.trace_weight, Some(5.0));

        let r = sec(&single(-1.0)).unwrap();
        assert_eq!((tree_of(&r), r.weight), (vec![(0, 1, 1)], 0.0));
        assert_eq!(sec(&k3()).unwrap().weight, 2.0);
    }

    #[test]
    fn zero_weight_edge_is_cut() {
        let r = sec(&single(0.0)).unwrap();
        assert_eq!(tree_of(&r), vec![(0, 1, -1)]);
    }

    #[test]
    fn sec_direction_does_not_change_weights() {
        use crate::generate::{gen_instance, InstanceSpec};
        for seed in 0..20 {
            let g = gen_instance(&InstanceSpec::sk_gaussian(12, seed)).unwrap();
            let a = sec_traced(&g, ShiftDirection::LowerIntoHigher).unwrap();
            let b = sec_traced(&g, ShiftDirection::HigherIntoLower).unwrap();
            let abs = |r: &ContractionRun| r.steps.iter().map(|s| s.current.abs()).collect::<Vec<_>>();
            assert_eq!(abs(&a), abs(&b));
            assert!(a.result.spins.same_cut(&b.result.spins));
        }
    }

    /// Replays SEC's selections with every shift reversed: returns the
    /// currents met along the way and the resulting cut.
    fn replay_reversed(g: &Graph, forward: &ContractionRun) -> (Vec<f64>, CutResult) {
        let mut c = Contractor::new(g, Select::AbsMax).unwrap();
        // Forward label -> label of the same cluster in the reversed run.
        let mut label: Vec<usize> = (0..g.n()).collect();
        let mut currents = Vec::new();
        for st in &forward.steps {
            let (i, j) = (label[st.removed], label[st.kept]);
            let w = c.pair_weight(i, j).unwrap_or(0.0);
            let sign = if st.current == 0.0 && w == 0.0 {
                st.sign
            } else if w >= 0.0 {
                -1
            } else {
                1
            };
            currents.push(w);
            c.contract(j, i, sign);
            label[st.kept] = i;
        }
        (currents, finish(Algorithm::Sec, g, c).result)
    }

    #[test]
    fn sec_reversed_shifts_keep_weights_under_ties() {
        use crate::generate::{gen_instance, InstanceSpec};
        for seed in 0..40 {
            let g = gen_instance(&InstanceSpec::erdos_renyi(14, 0.5, false, seed)).unwrap();
            let sk = Graph::from_edges(14, g.edges().map(|(u, v, _)| (u, v, ((u * 7 + v * 3 + seed as usize) % 5) as f64 - 2.0))).unwrap();
            for g in [g, sk] {
                if g.m() == 0 {
                    continue;
                }
                let fwd = sec_traced(&g, ShiftDirection::default()).unwrap();
                let (currents, rev) = replay_reversed(&g, &fwd);
                let back: Vec<f64> = currents.iter().map(|x| x.abs()).collect();
                let forth: Vec<f64> = fwd.steps.iter().map(|s| s.current.abs()).collect();
                assert_eq!(back, forth);
                // A zero current is cut in either direction, so the two cuts
                // may differ on that relation; their weights may not.
                assert_eq!(rev.trace_weight, fwd.result.trace_weight);
                assert!((rev.weight - fwd.result.weight).abs() <= 1e-9 * fwd.result.weight.abs().max(1.0));
            }
        }
    }

    #[test]
    fn edgeless_graphs_rejected() {
        let g = Graph::from_edges(3, []).unwrap();
        assert!(matches!(ec(&g), Err(Error::Edgeless)));
        assert!(matches!(dec(&g), Err(Error::Edgeless)));
        assert!(matches!(sec(&g), Err(Error::Edgeless)));
    }

    #[test]
    fn disconnected_sec() {
        let g = Graph::from_edges(5, [(0, 1, 2.0), (1, 2, 1.0), (3, 4, -4.0)]).unwrap();
        let r = sec(&g).unwrap();
        assert_eq!(r.weight, 3.0);
        assert_eq!(r.tree.as_ref().unwrap().edges().len(), 4);
    }
}
