//! Stabilizer-formalism view of the greedy heuristics.
//!
//! [`sec_stabilizer`] runs signed edge contraction as bookkeeping on the
//! coefficients of `Z_i Z_j` terms of the cut Hamiltonian. [`adapt_clifford`]
//! builds the ADAPT-Clifford stabilizer state by tracking its generators
//! symbolically: every expectation value the construction needs is `+-1` and
//! is read off the generator table, so no state vector is ever formed.
//!
//! Both are written independently of the graph-form code in [`crate::prim`]
//! and [`crate::kruskal`] (ordered maps and direct sums instead of labelled
//! matrices and running totals) and [`check_equivalences`] compares the two
//! routes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, CutResult, Init};
use crate::error::{Error, Result};
use crate::graph::{Graph, SpinAssignment};
use crate::kruskal::{self, ShiftDirection};
use crate::prim;
use crate::tree::RelationTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// `sign * Z_a Z_b`.
    Zz { sign: i8, a: usize, b: usize },
    /// `Z_v`, pins the global spin.
    Z { vertex: usize },
    /// `sign * prod_{l in support} X_l`.
    XString { sign: i8, support: usize },
}

impl Generator {
    /// Eigenvalue in the computational basis, when the generator is diagonal.
    pub fn evaluate(&self, z: &SpinAssignment) -> Option<i8> {
        let s = z.as_slice();
        match *self {
            Generator::Zz { sign, a, b } => Some(sign * s[a] * s[b]),
            Generator::Z { vertex } => Some(s[vertex]),
            Generator::XString { .. } => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sgn = |s: i8| if s < 0 { "-" } else { "+" };
        match *self {
            Generator::Zz { sign, a, b } => write!(f, "{}Z{a}Z{b}", sgn(sign)),
            Generator::Z { vertex } => write!(f, "+Z{vertex}"),
            Generator::XString { sign, support } => write!(f, "{}X^{support}", sgn(sign)),
        }
    }
}

/// One contraction in coefficient form. `coefficient` is the selected term's
/// current coefficient; `constant_after` is `H_0` once the term is absorbed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerStep {
    pub removed: usize,
    pub kept: usize,
    pub coefficient: f64,
    pub sign: i8,
    pub constant_after: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PauliLedger {
    /// Terms still present, keyed by `(min, max)`.
    pub terms: BTreeMap<(usize, usize), f64>,
    /// `H_0`.
    pub constant: f64,
    pub generators: Vec<Generator>,
    pub steps: Vec<LedgerStep>,
}

#[derive(Clone, Debug)]
pub struct StabilizerRun {
    pub ledger: PauliLedger,
    /// `-H_0`.
    pub weight: f64,
    pub spins: SpinAssignment,
}

/// Signed edge contraction on Pauli coefficients.
///
/// Starts from `c_ij = w_ij / 2` and `H_0 = -sum w / 2`; each step fixes the
/// generator `-sgn(c) Z_i Z_j` for the term of largest `|c|`, folds the other
/// `Z_i Z_k` terms onto `Z_j Z_k` and lowers `H_0` by `|c|`. Ties, shift
/// direction and the joining of disconnected pieces follow [`kruskal::sec`].
pub fn sec_stabilizer(g: &Graph) -> Result<StabilizerRun> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let n = g.n();
    let mut terms: BTreeMap<(usize, usize), f64> = g.edges().map(|(u, v, w)| ((u, v), w / 2.0)).collect();
    let mut constant = -0.5 * g.edges().map(|e| e.2).sum::<f64>();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut generators = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n.saturating_sub(1));

    for _ in 1..n {
        // Map order is lexicographic, so the first strict maximum wins ties.
        let mut pick: Option<((usize, usize), f64)> = None;
        for (&pair, &c) in &terms {
            if pick.is_none_or(|(_, best)| c.abs() > best.abs()) {
                pick = Some((pair, c));
            }
        }
        let ((i, j), c, sign) = match pick {
            Some((pair, c)) => (pair, c, if c >= 0.0 { -1i8 } else { 1 }),
            None => {
                let mut it = alive.iter();
                let a = *it.next().expect("two clusters left");
                let b = *it.next().expect("two clusters left");
                ((a, b), 0.0, 1)
            }
        };
        terms.remove(&(i, j));
        let moved: Vec<(usize, f64)> = terms
            .iter()
            .filter_map(|(&(a, b), &c)| match (a == i, b == i) {
                (true, _) => Some((b, c)),
                (_, true) => Some((a, c)),
                _ => None,
            })
            .collect();
        let s = f64::from(sign);
        for (k, cik) in moved {
            terms.remove(&(i.min(k), i.max(k)));
            // Z_i Z_k = (Z_i Z_j)(Z_j Z_k) and Z_i Z_j is pinned to `sign`.
            terms
                .entry((j.min(k), j.max(k)))
                .and_modify(|cjk| *cjk += s * cik)
                .or_insert(s * cik);
        }
        constant -= c.abs();
        alive.remove(&i);
        generators.push(Generator::Zz { sign, a: i, b: j });
        steps.push(LedgerStep {
            removed: i,
            kept: j,
            coefficient: c,
            sign,
            constant_after: constant,
        });
    }
    generators.push(Generator::Z { vertex: 0 });

    let spins = solve_zz(n, &generators);
    Ok(StabilizerRun {
        ledger: PauliLedger {
            terms,
            constant,
            generators,
            steps,
        },
        weight: -constant,
        spins,
    })
}

/// Solves `g = +1` for every `Z`-type generator; the `ZZ` ones must form a
/// spanning tree.
fn solve_zz(n: usize, generators: &[Generator]) -> SpinAssignment {
    let edges = generators
        .iter()
        .filter_map(|g| match *g {
            Generator::Zz { sign, a, b } => Some((a.min(b), a.max(b), sign)),
            _ => None,
        })
        .collect();
    RelationTree::from_parts_unchecked(n, edges).scan()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexStatus {
    /// Still stabilised by `X_v`.
    Undetermined,
    /// The first anchor `i1`.
    Anchor,
    /// Stabilised by `sign * Z_v Z_anchor`.
    Bound { anchor: usize, sign: i8 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub status: Vec<VertexStatus>,
    pub first: usize,
    pub second: Option<usize>,
    pub x_string_sign: i8,
    pub x_string_support: usize,
    /// Vertices in the order they left `X` type.
    pub order: Vec<usize>,
}

impl GeneratorTable {
    fn new(n: usize, first: usize) -> Self {
        let mut status = vec![VertexStatus::Undetermined; n];
        status[first] = VertexStatus::Anchor;
        GeneratorTable {
            status,
            first,
            second: None,
            // Z_{i1} turns X_{i1} into -X_{i1}.
            x_string_sign: -1,
            x_string_support: 1,
            order: vec![first],
        }
    }

    fn bind(&mut self, v: usize, anchor: usize, sign: i8) {
        self.status[v] = VertexStatus::Bound { anchor, sign };
        self.x_string_support += 1;
        self.order.push(v);
    }

    /// `<Z_l Z_{i1}>` for a determined vertex `l`.
    pub fn correlation_with_first(&self, l: usize) -> i8 {
        match self.status[l] {
            VertexStatus::Anchor => 1,
            VertexStatus::Bound { anchor, sign } => sign * self.correlation_with_first(anchor),
            VertexStatus::Undetermined => panic!("vertex {l} is undetermined"),
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self
            .order
            .iter()
            .filter_map(|&v| match self.status[v] {
                VertexStatus::Bound { anchor, sign } => Some(Generator::Zz { sign, a: anchor, b: v }),
                _ => None,
            })
            .collect();
        out.push(Generator::XString {
            sign: self.x_string_sign,
            support: self.x_string_support,
        });
        out
    }

    /// Computational-basis reading of the state, `z_{i1} = +1`, canonicalised.
    pub fn solve(&self) -> SpinAssignment {
        let z = (0..self.status.len()).map(|l| self.correlation_with_first(l)).collect();
        SpinAssignment::new(z).expect("correlations are +-1").canonical()
    }
}

#[derive(Clone, Debug)]
pub struct AdaptRun {
    pub table: GeneratorTable,
    pub result: CutResult,
}

/// ADAPT-Clifford from start vertex `r`.
///
/// `i2` is the heaviest edge at `r` (smallest index on ties, isolated `r`
/// takes the smallest other vertex). Each later round scores undetermined
/// `i` by `g_{i,i1} = -sum_l w_il <Z_l Z_{i1}>`, `g_{i,i2} = -g_{i,i1}`,
/// picks the largest `max(g_{i,i1}, g_{i,i2})` (smallest index on ties) and
/// binds it to `i1` when `g_{i,i1} >= 0`, otherwise to `i2`.
pub fn adapt_clifford(g: &Graph, r: usize) -> Result<AdaptRun> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { need: 2, n });
    }
    if r >= n {
        return Err(Error::VertexOutOfRange { vertex: r, n });
    }
    let mut table = GeneratorTable::new(n, r);

    let mut i2: Option<(usize, f64)> = None;
    for (v, w) in g.neighbors(r) {
        if i2.is_none_or(|(_, best)| w > best) {
            i2 = Some((v, w));
        }
    }
    let i2 = i2.map(|e| e.0).unwrap_or(if r == 0 { 1 } else { 0 });
    // exp(i pi/4 Z_{i2} Y_{i1}): X_{i2} -> -Z_{i1} Z_{i2}, -X_{i1} -> -X_{i1} X_{i2}.
    table.second = Some(i2);
    table.bind(i2, r, -1);

    for _ in 2..n {
        let mut pick: Option<(usize, f64, f64)> = None;
        for i in 0..n {
            if table.status[i] != VertexStatus::Undetermined {
                continue;
            }
            // Sum same-side and opposite-side couplings separately, in the
            // order the vertices were determined.
            let (mut same, mut opposite) = (0.0f64, 0.0f64);
            for &l in &table.order {
                if let Some(w) = g.weight(i, l) {
                    if table.correlation_with_first(l) > 0 {
                        same += w;
                    } else {
                        opposite += w;
                    }
                }
            }
            let g_first = opposite - same;
            let g_second = same - opposite;
            let score = g_first.max(g_second);
            if pick.is_none_or(|(_, best, _)| score > best) {
                pick = Some((i, score, g_first));
            }
        }
        let (i, _, g_first) = pick.expect("undetermined vertices remain");
        // exp(i pi/4 Y_i Z_anchor): X_i -> Z_i Z_anchor.
        let anchor = if g_first >= 0.0 { r } else { i2 };
        table.bind(i, anchor, 1);
    }

    let spins = table.solve();
    let tree_edges = table
        .order
        .iter()
        .filter_map(|&v| match table.status[v] {
            VertexStatus::Bound { anchor, sign } => Some((anchor.min(v), anchor.max(v), sign)),
            _ => None,
        })
        .collect();
    let tree = RelationTree::from_parts_unchecked(n, tree_edges);
    let result = CutResult::new(Algorithm::Adapt, g, spins, Some(tree)).with_init(Init::Vertex(r));
    Ok(AdaptRun { table, result })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub violations: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            passed: true,
            cases: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.violations.push(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub m: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl EquivalenceReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }
}

/// Cross-checks every start vertex. See [`check_equivalences_for`].
pub fn check_equivalences(g: &Graph) -> Result<EquivalenceReport> {
    let starts: Vec<usize> = (0..g.n()).collect();
    check_equivalences_for(g, &starts)
}

/// Compares the stabilizer-form algorithms with their graph-form twins:
///
/// * `adapt-vs-sg3`: `adapt_clifford(g, r)` and `prim::sg3(g, r)` give the
///   same bipartition for each `r` in `starts`;
/// * `stabilizer-vs-sec`: `-H_0` equals SEC's implied weight exactly and its
///   cut weight to `1e-9` relative;
/// * `ledger-vs-contraction`: every step selects the same pair and sign, with
///   coefficient exactly half the current edge weight;
/// * `generators-satisfied`: every diagonal generator evaluates to `+1`.
pub fn check_equivalences_for(g: &Graph, starts: &[usize]) -> Result<EquivalenceReport> {
    let mut adapt = Check::new("adapt-vs-sg3");
    let mut weight = Check::new("stabilizer-vs-sec");
    let mut ledger = Check::new("ledger-vs-contraction");
    let mut gens = Check::new("generators-satisfied");

    if g.n() >= 2 {
        for &r in starts {
            let a = adapt_clifford(g, r)?;
            let s = prim::sg3(g, r)?;
            adapt.record(a.result.spins.same_cut(&s.spins), || {
                format!("r = {r}: adapt {:?} vs sg3 {:?}", a.result.spins.partition(), s.spins.partition())
            });
            for gen in a.table.generators() {
                if let Some(v) = gen.evaluate(&a.result.spins) {
                    gens.record(v == 1, || format!("adapt r = {r}: {gen} evaluates to {v}"));
                }
            }
        }
    }

    if g.m() > 0 {
        let stab = sec_stabilizer(g)?;
        let graph = kruskal::sec_traced(g, ShiftDirection::default())?;
        let implied = graph.result.trace_weight.unwrap_or(f64::NAN);
        weight.record(stab.weight == implied, || {
            format!("-H0 = {} but contraction implies {implied}", stab.weight)
        });
        let cut = graph.result.weight;
        let tol = 1e-9 * stab.weight.abs().max(cut.abs()).max(1.0);
        weight.record((stab.weight - cut).abs() <= tol, || {
            format!("-H0 = {} but the SEC cut weighs {cut}", stab.weight)
        });
        weight.record(stab.spins.same_cut(&graph.result.spins), || "stabilizer and SEC cuts differ".into());

        ledger.record(stab.ledger.steps.len() == graph.steps.len(), || {
            format!("{} ledger steps vs {} contractions", stab.ledger.steps.len(), graph.steps.len())
        });
        for (l, (p, e)) in stab.ledger.steps.iter().zip(&graph.steps).enumerate() {
            let same = p.removed == e.removed && p.kept == e.kept && p.sign == e.sign && p.coefficient == e.current / 2.0;
            ledger.record(same, || {
                format!(
                    "step {l}: ledger ({}, {}) c = {} sign {} vs edge ({}, {}) w = {} sign {}",
                    p.removed, p.kept, p.coefficient, p.sign, e.removed, e.kept, e.current, e.sign
                )
            });
        }
        for gen in &stab.ledger.generators {
            if let Some(v) = gen.evaluate(&stab.spins) {
                gens.record(v == 1, || format!("SEC: {gen} evaluates to {v}"));
            }
        }
    }

    let checks = vec![adapt, weight, ledger, gens];
    Ok(EquivalenceReport {
        n: g.n(),
        m: g.m(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
