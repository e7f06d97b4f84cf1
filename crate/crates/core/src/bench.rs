//! Instance sweeps, per-record ratios and their aggregation.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algorithm::{self, Algorithm, RunOptions};
use crate::error::{Error, Result};
use crate::generate::{gen_instance, Family, InstanceSpec};
use crate::oracle::{self, MAX_ORACLE_N};
use crate::par::Exec;
use crate::rng;

/// Parisi value, the limiting SK ground-state energy per `n^{3/2}`.
pub const PARISI: f64 = -0.763;
/// Limiting SK energy reached by the original Sahni-Gonzalez ordering, `-(2/3) sqrt(2/pi)`.
pub const SG_LIMIT: f64 = -0.532;
/// Limiting SK energy of SDP rounding, `-2/pi`.
pub const SDP_LIMIT: f64 = -0.637;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Denominator {
    #[default]
    TotalWeight,
    /// Exact optimum; only for `n <= 24`.
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub family: Family,
    pub n: Vec<usize>,
    /// Edge probabilities, `erdos-renyi` only.
    #[serde(default)]
    pub p: Vec<f64>,
    /// Degrees, `k-regular` only.
    #[serde(default)]
    pub k: Vec<usize>,
    #[serde(default)]
    pub weighted: bool,
    pub instances: usize,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub denominator: Denominator,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Record wall-clock time per run; `false` writes zeros so reruns are
    /// byte-identical.
    #[serde(default = "default_timing")]
    pub timing: bool,
}

fn default_timing() -> bool {
    true
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Grid points in canonical order: `n` outer, then `p` or `k`.
    pub fn points(&self) -> Vec<InstanceSpec> {
        let mut out = Vec::new();
        for &n in &self.n {
            match self.family {
                Family::ErdosRenyi => out.extend(self.p.iter().map(|&p| InstanceSpec::erdos_renyi(n, p, self.weighted, 0))),
                Family::KRegular => out.extend(self.k.iter().map(|&k| InstanceSpec::k_regular(n, k, self.weighted, 0))),
                Family::CompleteUniform => out.push(InstanceSpec::complete_uniform(n, 0)),
                Family::SkGaussian => out.push(InstanceSpec::sk_gaussian(n, 0)),
            }
        }
        out
    }

    /// Seed of instance `i` at grid point `point`; distinct for every pair
    /// (up to `u64` wrap-around).
    pub fn instance_seed(&self, point: usize, i: usize) -> u64 {
        rng::derive_seed(self.seed, (point as u64) * (self.instances as u64) + i as u64)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n.is_empty() {
            return bad("no values of n".into());
        }
        if self.instances == 0 {
            return bad("instances must be positive".into());
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms".into());
        }
        match self.family {
            Family::ErdosRenyi if self.p.is_empty() => return bad("erdos-renyi needs a list of p".into()),
            Family::KRegular if self.k.is_empty() => return bad("k-regular needs a list of k".into()),
            Family::ErdosRenyi if !self.k.is_empty() => return bad("k is only used by k-regular".into()),
            Family::KRegular if !self.p.is_empty() => return bad("p is only used by erdos-renyi".into()),
            Family::CompleteUniform | Family::SkGaussian if !self.p.is_empty() || !self.k.is_empty() => {
                return bad(format!("{} takes neither p nor k", self.family));
            }
            _ => {}
        }
        if self.denominator == Denominator::Oracle {
            if let Some(&n) = self.n.iter().find(|&&n| n > MAX_ORACLE_N) {
                return bad(format!("oracle denominator needs n <= {MAX_ORACLE_N}, got n = {n}"));
            }
        }
        for spec in self.points() {
            spec.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: Family,
    pub n: usize,
    pub p: Option<f64>,
    pub k: Option<usize>,
    pub weighted: bool,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub weight: f64,
    pub w_tot: f64,
    /// `weight / denominator`; 1 when the denominator is 0.
    pub ratio: f64,
    /// `E / n^{3/2}`, for `sk-gaussian` instances.
    pub sk_e_reg: Option<f64>,
    pub runtime_s: f64,
}

impl BenchRecord {
    pub fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            family: self.family,
            n: self.n,
            k: self.k,
            p: self.p,
            weighted: self.weighted,
            seed: self.seed,
        }
    }
}

/// Runs every (point, instance, algorithm) triple. Instances are distributed
/// over workers; records come back ordered by point, instance, then the
/// configured algorithm order.
pub fn run_sweep(cfg: &SweepConfig, exec: Exec) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let points = cfg.points();
    let tasks = points.len() * cfg.instances;
    let per_task = exec.map(tasks, |t| {
        let (point, i) = (t / cfg.instances, t % cfg.instances);
        let spec = InstanceSpec {
            seed: cfg.instance_seed(point, i),
            ..points[point].clone()
        };
        run_instance(cfg, &spec, exec)
    });
    let mut out = Vec::with_capacity(tasks * cfg.algorithms.len());
    for recs in per_task {
        out.extend(recs?);
    }
    Ok(out)
}

fn run_instance(cfg: &SweepConfig, spec: &InstanceSpec, exec: Exec) -> Result<Vec<BenchRecord>> {
    let g = gen_instance(spec)?;
    let w_tot = g.total_weight();
    let denom = match cfg.denominator {
        Denominator::TotalWeight => w_tot,
        Denominator::Oracle => oracle::brute_force_with(&g, exec)?.optimum,
    };
    let opts = RunOptions {
        seed: spec.seed,
        exec,
        ..Default::default()
    };
    cfg.algorithms
        .iter()
        .map(|&alg| {
            let start = Instant::now();
            let res = algorithm::run(alg, &g, &opts)?;
            let runtime_s = if cfg.timing { start.elapsed().as_secs_f64() } else { 0.0 };
            Ok(BenchRecord {
                family: spec.family,
                n: spec.n,
                p: spec.p,
                k: spec.k,
                weighted: spec.weighted,
                seed: spec.seed,
                algorithm: alg,
                weight: res.weight,
                w_tot,
                ratio: if denom == 0.0 { 1.0 } else { res.weight / denom },
                sk_e_reg: (spec.family == Family::SkGaussian).then(|| oracle::regularized_energy(&g, res.weight)),
                runtime_s,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(xs: &[f64]) -> Result<Stats> {
        if xs.is_empty() {
            return Err(Error::Config("no values to summarise".into()));
        }
        let len = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / len;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (len - 1.0)).sqrt()
        } else {
            0.0
        };
        let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Stats { mean, std, min, max })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: Family,
    pub n: usize,
    pub p: Option<f64>,
    pub k: Option<usize>,
    pub weighted: bool,
    pub algorithm: Algorithm,
    pub count: usize,
    pub ratio: Stats,
    pub sk_e_reg: Option<Stats>,
    pub runtime_s: f64,
}

/// Per (point, algorithm) statistics, in order of first appearance.
pub fn aggregate(records: &[BenchRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::Config("no records to aggregate".into()));
    }
    type Key = (Family, usize, Option<u64>, Option<usize>, bool, Algorithm);
    let key = |r: &BenchRecord| -> Key { (r.family, r.n, r.p.map(f64::to_bits), r.k, r.weighted, r.algorithm) };
    let mut groups: Vec<(Key, Vec<&BenchRecord>)> = Vec::new();
    for r in records {
        let k = key(r);
        match groups.iter_mut().find(|(g, _)| *g == k) {
            Some((_, v)) => v.push(r),
            None => groups.push((k, vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|(_, rs)| {
            let first = rs[0];
            let ratios: Vec<f64> = rs.iter().map(|r| r.ratio).collect();
            let energies: Vec<f64> = rs.iter().filter_map(|r| r.sk_e_reg).collect();
            Ok(SummaryRow {
                family: first.family,
                n: first.n,
                p: first.p,
                k: first.k,
                weighted: first.weighted,
                algorithm: first.algorithm,
                count: rs.len(),
                ratio: Stats::of(&ratios)?,
                sk_e_reg: if energies.is_empty() { None } else { Some(Stats::of(&energies)?) },
                runtime_s: rs.iter().map(|r| r.runtime_s).sum(),
            })
        })
        .collect()
}

pub fn total_runtime(records: &[BenchRecord]) -> f64 {
    records.iter().map(|r| r.runtime_s).sum()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[BenchRecord], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(records, out),
        OutputFormat::Json => write_json(records, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> SweepConfig {
        SweepConfig::from_json(json).unwrap()
    }

    fn record(ratio: f64) -> BenchRecord {
        BenchRecord {
            family: Family::CompleteUniform,
            n: 10,
            p: None,
            k: None,
            weighted: true,
            seed: 0,
            algorithm: Algorithm::Sg3,
            weight: ratio,
            w_tot: 1.0,
            ratio,
            sk_e_reg: None,
            runtime_s: 0.0,
        }
    }

    #[test]
    fn complete_sweep_ratios() {
        let c = cfg(r#"{"family":"complete-uniform","n":[30],"instances":8,"algorithms":["sg3d"],"seed":4}"#);
        let recs = run_sweep(&c, Exec::default()).unwrap();
        assert_eq!(recs.len(), 8);
        assert!(recs.iter().all(|r| r.ratio > 0.5 && r.ratio <= 1.0 && r.sk_e_reg.is_none()));
    }

    #[test]
    fn sk_records_carry_energy() {
        let c = cfg(r#"{"family":"sk-gaussian","n":[40],"instances":3,"algorithms":["sg3","sec"]}"#);
        let recs = run_sweep(&c, Exec::default()).unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.sk_e_reg.is_some()));
    }

    #[test]
    fn grid_size_and_seeds() {
        let c = cfg(r#"{"family":"erdos-renyi","n":[60],"p":[0.05,0.1],"instances":4,"algorithms":["sg3d","sec"]}"#);
        let recs = run_sweep(&c, Exec::default()).unwrap();
        assert_eq!(recs.len(), 16);
        let mut seeds: Vec<u64> = recs.iter().map(|r| r.seed).collect();
        seeds.dedup();
        assert_eq!(seeds, (0..8).collect::<Vec<u64>>());
        assert_eq!(recs[0].p, Some(0.05));
        assert_eq!(recs[15].p, Some(0.1));
    }

    #[test]
    fn oracle_denominator() {
        let c = cfg(r#"{"family":"complete-uniform","n":[10],"instances":3,"algorithms":["sec"],"denominator":"oracle"}"#);
        let recs = run_sweep(&c, Exec::default()).unwrap();
        assert!(recs.iter().all(|r| r.ratio <= 1.0 && r.ratio > 0.5));
        let err = SweepConfig::from_json(r#"{"family":"complete-uniform","n":[30],"instances":1,"algorithms":["sec"],"denominator":"oracle"}"#);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn invalid_configs() {
        for bad in [
            r#"{"family":"erdos-renyi","n":[10],"instances":1,"algorithms":["sec"]}"#,
            r#"{"family":"k-regular","n":[5],"k":[3],"instances":1,"algorithms":["sec"]}"#,
            r#"{"family":"complete-uniform","n":[10],"instances":0,"algorithms":["sec"]}"#,
            r#"{"family":"complete-uniform","n":[10],"instances":1,"algorithms":["sg9"]}"#,
            r#"{"family":"complete-uniform","n":[10],"instances":1,"algorithms":[],"extra":1}"#,
        ] {
            assert!(SweepConfig::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn csv_is_reproducible() {
        let c = cfg(r#"{"family":"k-regular","n":[20],"k":[3],"instances":2,"algorithms":["sg3r","dq"],"seed":9,"timing":false}"#);
        let a = run_sweep(&c, Exec::Parallel).unwrap();
        let b = run_sweep(&c, Exec::Sequential).unwrap();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        write_csv(&a, &mut x).unwrap();
        write_csv(&b, &mut y).unwrap();
        assert_eq!(x, y);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with("family,n,p,k,weighted,seed,algorithm,weight,w_tot,ratio,sk_e_reg,runtime_s\n"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn aggregate_examples() {
        let s = aggregate(&vec![record(0.9); 10]).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].ratio.mean - 0.9).abs() < 1e-15);
        assert!(s[0].ratio.std < 1e-15);
        let s = aggregate(&[record(0.8), record(1.0)]).unwrap();
        assert!((s[0].ratio.mean - 0.9).abs() < 1e-15);
        assert_eq!((s[0].ratio.min, s[0].ratio.max), (0.8, 1.0));
        assert!(aggregate(&[]).is_err());
    }

    #[test]
    fn reference_constants() {
        assert!((SG_LIMIT + (2.0 / 3.0) * (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-3);
        assert!((SDP_LIMIT + 2.0 / std::f64::consts::PI).abs() < 1e-3);
        const { assert!(PARISI < SDP_LIMIT && SDP_LIMIT < SG_LIMIT) };
    }
}
