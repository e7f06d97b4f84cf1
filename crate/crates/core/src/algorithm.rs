//! Algorithm tags, the common result type and a single dispatch entry point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SpinAssignment};
use crate::par::Exec;
use crate::tree::RelationTree;
use crate::{kruskal, prim, stabilizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Fixed vertex order, first two vertices split.
    Sg,
    /// Max-weight edge start, best-in selection.
    Sg1,
    /// Max-weight edge start, worst-out selection.
    Sg2,
    /// Max-weight edge start, best-in-worst-out selection.
    Sg3e,
    /// Single start vertex, best-in-worst-out selection.
    Sg3,
    /// `Sg3` from every start vertex, best kept.
    Sg3d,
    /// `Sg3` from `t` random start vertices, best kept.
    Sg3r,
    /// Random spanning forest with all edges cut.
    Dq,
    /// Edge contraction, worst-out.
    Ec,
    /// Differencing edge contraction, best-in.
    Dec,
    /// Signed edge contraction, best-in-worst-out.
    Sec,
    /// Stabilizer-generator construction (equivalent to `Sg3`).
    Adapt,
}

impl Algorithm {
    pub const ALL: [Algorithm; 12] = [
        Algorithm::Sg,
        Algorithm::Sg1,
        Algorithm::Sg2,
        Algorithm::Sg3e,
        Algorithm::Sg3,
        Algorithm::Sg3d,
        Algorithm::Sg3r,
        Algorithm::Dq,
        Algorithm::Ec,
        Algorithm::Dec,
        Algorithm::Sec,
        Algorithm::Adapt,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Sg => "sg",
            Algorithm::Sg1 => "sg1",
            Algorithm::Sg2 => "sg2",
            Algorithm::Sg3e => "sg3e",
            Algorithm::Sg3 => "sg3",
            Algorithm::Sg3d => "sg3d",
            Algorithm::Sg3r => "sg3r",
            Algorithm::Dq => "dq",
            Algorithm::Ec => "ec",
            Algorithm::Dec => "dec",
            Algorithm::Sec => "sec",
            Algorithm::Adapt => "adapt",
        }
    }

    /// Whether the heuristic never returns less than half the total weight on
    /// nonnegative graphs.
    pub fn has_half_guarantee(self) -> bool {
        !matches!(self, Algorithm::Ec)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    pub algorithm: Algorithm,
    /// Canonical representative, `z_0 = +1`.
    pub spins: SpinAssignment,
    /// `cut_weight(g, spins)`, summed in lexicographic edge order.
    pub weight: f64,
    /// The heuristic's own running account of the cut weight, when it keeps one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<RelationTree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<Init>,
}

impl CutResult {
    pub(crate) fn new(
        algorithm: Algorithm,
        g: &Graph,
        spins: SpinAssignment,
        tree: Option<RelationTree>,
    ) -> Self {
        let spins = spins.canonical();
        let weight = g.cut_weight(&spins).expect("spins sized to the graph");
        CutResult {
            algorithm,
            spins,
            weight,
            trace_weight: None,
            tree,
            seed: None,
            init: None,
        }
    }

    pub(crate) fn with_trace(mut self, w: f64) -> Self {
        self.trace_weight = Some(w);
        self
    }

    pub(crate) fn with_init(mut self, init: Init) -> Self {
        self.init = Some(init);
        self
    }

    pub(crate) fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Start vertex for `sg3` and `adapt`.
    pub root: usize,
    /// Seed for `sg3r` and `dq`.
    pub seed: u64,
    /// Repeat count for `sg3r`; defaults to `floor(2 log2 n)`.
    pub repeats: Option<usize>,
    /// Keep the relation tree in the result.
    pub emit_tree: bool,
    pub exec: Exec,
}

pub fn run(algorithm: Algorithm, g: &Graph, opts: &RunOptions) -> Result<CutResult> {
    let mut res = match algorithm {
        Algorithm::Sg => prim::sg(g, None),
        Algorithm::Sg1 => prim::sg_edge_init(g, prim::Criterion::BestIn),
        Algorithm::Sg2 => prim::sg_edge_init(g, prim::Criterion::WorstOut),
        Algorithm::Sg3e => prim::sg_edge_init(g, prim::Criterion::BestInWorstOut),
        Algorithm::Sg3 => prim::sg3(g, opts.root),
        Algorithm::Sg3d => prim::sg3_d(g, opts.exec),
        Algorithm::Sg3r => prim::sg3_r(g, opts.seed, opts.repeats, opts.exec),
        Algorithm::Dq => kruskal::de_quincey(g, opts.seed),
        Algorithm::Ec => kruskal::ec(g),
        Algorithm::Dec => kruskal::dec(g),
        Algorithm::Sec => kruskal::sec(g),
        Algorithm::Adapt => stabilizer::adapt_clifford(g, opts.root).map(|a| a.result),
    }?;
    if !opts.emit_tree {
        res.tree = None;
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.tag().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.tag()));
        }
        assert!("sg4".parse::<Algorithm>().is_err());
    }

    #[test]
    fn tree_is_optional() {
        let g = Graph::from_edges(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap();
        for a in Algorithm::ALL {
            let bare = run(a, &g, &RunOptions::default()).unwrap();
            assert!(bare.tree.is_none());
            let opts = RunOptions { emit_tree: true, ..Default::default() };
            let full = run(a, &g, &opts).unwrap();
            let t = full.tree.as_ref().expect("every heuristic builds a tree");
            assert!(t.scan().same_cut(&full.spins), "{a}");
            assert_eq!(bare.weight, full.weight);
        }
    }

    #[test]
    fn init_serialises_compactly() {
        assert_eq!(serde_json::to_string(&Init::Vertex(3)).unwrap(), r#"{"vertex":3}"#);
        assert_eq!(serde_json::to_string(&Init::Edge(0, 2)).unwrap(), r#"{"edge":[0,2]}"#);
    }
}
