//! Random instance families used by the benchmark protocols.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `K_n` with weights i.i.d. `U[0, 1]`.
    CompleteUniform,
    /// `K_n` with weights i.i.d. `N(0, 1)` (Sherrington-Kirkpatrick couplings).
    SkGaussian,
    /// Random simple `k`-regular graph.
    KRegular,
    /// `G(n, p)`.
    ErdosRenyi,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::CompleteUniform => "complete-uniform",
            Family::SkGaussian => "sk-gaussian",
            Family::KRegular => "k-regular",
            Family::ErdosRenyi => "erdos-renyi",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::CompleteUniform,
            Family::SkGaussian,
            Family::KRegular,
            Family::ErdosRenyi,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| Error::Spec(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Only meaningful for the sparse families; complete families are always weighted.
    #[serde(default)]
    pub weighted: bool,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn complete_uniform(n: usize, seed: u64) -> Self {
        InstanceSpec { family: Family::CompleteUniform, n, k: None, p: None, weighted: true, seed }
    }

    pub fn sk_gaussian(n: usize, seed: u64) -> Self {
        InstanceSpec { family: Family::SkGaussian, n, k: None, p: None, weighted: true, seed }
    }

    pub fn k_regular(n: usize, k: usize, weighted: bool, seed: u64) -> Self {
        InstanceSpec { family: Family::KRegular, n, k: Some(k), p: None, weighted, seed }
    }

    pub fn erdos_renyi(n: usize, p: f64, weighted: bool, seed: u64) -> Self {
        InstanceSpec { family: Family::ErdosRenyi, n, k: None, p: Some(p), weighted, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Spec("n must be positive".into()));
        }
        match self.family {
            Family::KRegular => {
                let k = self.k.ok_or_else(|| Error::Spec("k-regular needs k".into()))?;
                if k >= self.n {
                    return Err(Error::Spec(format!("k = {k} must be below n = {}", self.n)));
                }
                if (self.n * k) % 2 == 1 {
                    return Err(Error::Spec(format!("n * k = {} must be even", self.n * k)));
                }
            }
            Family::ErdosRenyi => {
                let p = self.p.ok_or_else(|| Error::Spec("erdos-renyi needs p".into()))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Spec(format!("p = {p} outside [0, 1]")));
                }
            }
            Family::CompleteUniform | Family::SkGaussian => {}
        }
        Ok(())
    }

    /// Whether every generated weight is nonnegative.
    pub fn nonnegative(&self) -> bool {
        self.family != Family::SkGaussian
    }
}

pub fn gen_instance(spec: &InstanceSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng::seeded(spec.seed);
    let n = spec.n;
    match spec.family {
        Family::CompleteUniform => Graph::complete_with(n, |_, _| rng.random::<f64>()),
        Family::SkGaussian => Graph::complete_with(n, |_, _| rng.sample(StandardNormal)),
        Family::ErdosRenyi => {
            let p = spec.p.unwrap_or_default();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        let w = if spec.weighted { rng.random::<f64>() } else { 1.0 };
                        edges.push((u, v, w));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        Family::KRegular => {
            let pairs = regular_pairing(n, spec.k.unwrap_or_default(), &mut rng);
            let weighted = spec.weighted;
            Graph::from_edges(
                n,
                pairs.into_iter().map(|(u, v)| {
                    let w = if weighted { rng.random::<f64>() } else { 1.0 };
                    (u, v, w)
                }),
            )
        }
    }
}

/// Random simple `k`-regular graph from the configuration (pairing) model.
///
/// Points are matched one pair at a time, drawing uniformly among the
/// remaining points and rejecting pairs that would create a loop or a
/// repeated edge; a dead end restarts from scratch. Plain whole-matching
/// rejection succeeds with probability about `exp(-(k^2 - 1) / 4)`, which is
/// hopeless already at `k = 8`.
fn regular_pairing(n: usize, k: usize, rng: &mut rng::Rng) -> Vec<(usize, usize)> {
    const TRIES: usize = 64;
    'attempt: loop {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
        let mut used: HashSet<(usize, usize)> = HashSet::with_capacity(n * k / 2);
        let mut pairs = Vec::with_capacity(n * k / 2);
        while !points.is_empty() {
            let mut found = None;
            for _ in 0..TRIES {
                let a = rng.random_range(0..points.len());
                let b = rng.random_range(0..points.len());
                if a != b && suitable(points[a], points[b], &used) {
                    found = Some((a, b));
                    break;
                }
            }
            if found.is_none() {
                // Sampling keeps failing: check exhaustively before giving up.
                let len = points.len();
                found = (0..len)
                    .flat_map(|a| (a + 1..len).map(move |b| (a, b)))
                    .find(|&(a, b)| suitable(points[a], points[b], &used));
                if found.is_none() {
                    continue 'attempt;
                }
            }
            let (a, b) = found.unwrap_or_default();
            let (u, v) = (points[a], points[b]);
            used.insert((u.min(v), u.max(v)));
            pairs.push((u.min(v), u.max(v)));
            points.swap_remove(a.max(b));
            points.swap_remove(a.min(b));
        }
        pairs.sort_unstable();
        return pairs;
    }
}

fn suitable(u: usize, v: usize, used: &HashSet<(usize, usize)>) -> bool {
    u != v && !used.contains(&(u.min(v), u.max(v)))
}
