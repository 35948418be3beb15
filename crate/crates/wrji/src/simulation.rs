//! Seeded Monte Carlo harness for the bias/MSE study of the two WRJI
//! estimators.
//!
//! Replications are independent given derived seeds, so the harness runs them
//! in parallel; sums are accumulated in replication order afterwards, which
//! keeps reports byte-identical regardless of thread count.
//!
//! Seed splitting: replication `r` of a run with master seed `s` draws from
//! `ChaCha8(splitmix(splitmix(s) ^ r))`, and both samples of a replication
//! come from that one stream (X first, then Y). Each sample-size cell uses a
//! prefix of the same `max(n)` draws, so size comparisons share randomness.

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::estimators::{EstimatorConfig, Sample, SfEstimator, WrjiEstimator};
use crate::measures;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Configuration of one Monte Carlo run: a true law X, an assigned law Y,
/// and the evaluation grids.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub x: Distribution,
    pub y: Distribution,
    pub t_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub modes: Vec<SfEstimator>,
    pub estimator: EstimatorConfig,
}

/// Aggregates for one (t, n, mode) cell.
#[derive(Debug, Clone, Serialize)]
pub struct McCell {
    pub t: f64,
    pub n: usize,
    pub mode: &'static str,
    pub truth: f64,
    pub bias: f64,
    pub mse: f64,
    pub failures: usize,
    pub replications: usize,
    /// Set when more than 1% of replications failed; the aggregates then
    /// cover successes only and should not be quoted.
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationReport {
    pub x_spec: String,
    pub y_spec: String,
    pub seed: u64,
    pub cells: Vec<McCell>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-replication generator, derived from the master seed.
fn rep_rng(master: u64, rep: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(master) ^ rep))
}

struct RepOutcome {
    // estimates[n_idx][t_idx][mode_idx]
    estimates: Vec<Vec<Vec<Option<f64>>>>,
}

/// Run the study: for every replication draw paired samples from X and Y,
/// compute both estimators on every (t, n) cell, and aggregate
/// bias = mean(est) - truth and mse = mean((est - truth)²) against the
/// measure-module truth.
pub fn run_mc(cfg: &McConfig) -> Result<SimulationReport> {
    if cfg.replications == 0 {
        return Err(Error::InvalidParameter("replications must be >= 1".into()));
    }
    if cfg.t_grid.is_empty() || cfg.n_grid.is_empty() || cfg.modes.is_empty() {
        return Err(Error::InvalidParameter("t, n and mode grids must be non-empty".into()));
    }
    let grid = measures::TimeGrid::new(cfg.t_grid.clone())?;
    grid.validate_for(&[&cfg.x, &cfg.y])?;
    let max_n = *cfg.n_grid.iter().max().expect("n grid non-empty");

    // Per-t truth, computed once (closed form where registered, quadrature
    // otherwise).
    let truths: Vec<f64> = cfg
        .t_grid
        .iter()
        .map(|&t| measures::wrji(&cfg.x, &cfg.y, t).map(|m| m.value))
        .collect::<Result<_>>()?;

    let outcomes: Vec<RepOutcome> = (0..cfg.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rep_rng(cfg.seed, rep);
            let draws_x = cfg.x.sample_with(&mut rng, max_n);
            let draws_y = cfg.y.sample_with(&mut rng, max_n);
            let mut estimates = Vec::with_capacity(cfg.n_grid.len());
            for &n in &cfg.n_grid {
                let mut per_t = vec![vec![None; cfg.modes.len()]; cfg.t_grid.len()];
                let sx = Sample::new(draws_x[..n].to_vec());
                let sy = Sample::new(draws_y[..n].to_vec());
                if let (Ok(sx), Ok(sy)) = (sx, sy) {
                    if let Ok(est) = WrjiEstimator::new(sx, sy, &cfg.estimator) {
                        if let Ok(nums) = est.numerator_grid(&cfg.t_grid) {
                            for (ti, &t) in cfg.t_grid.iter().enumerate() {
                                for (mi, &mode) in cfg.modes.iter().enumerate() {
                                    per_t[ti][mi] =
                                        est.estimate_with_numerator(t, nums[ti], mode).ok();
                                }
                            }
                        }
                    }
                }
                estimates.push(per_t);
            }
            RepOutcome { estimates }
        })
        .collect();

    let mut cells = Vec::new();
    for (ni, &n) in cfg.n_grid.iter().enumerate() {
        for (ti, &t) in cfg.t_grid.iter().enumerate() {
            for (mi, &mode) in cfg.modes.iter().enumerate() {
                let truth = truths[ti];
                let mut count = 0usize;
                let mut sum = 0.0;
                let mut sum_sq = 0.0;
                for o in &outcomes {
                    match o.estimates[ni][ti][mi] {
                        Some(e) => {
                            count += 1;
                            sum += e;
                            sum_sq += (e - truth) * (e - truth);
                        }
                        None => {}
                    }
                }
                let failures = cfg.replications - count;
                let (bias, mse) = if count > 0 {
                    (sum / count as f64 - truth, sum_sq / count as f64)
                } else {
                    (f64::NAN, f64::NAN)
                };
                cells.push(McCell {
                    t,
                    n,
                    mode: mode.name(),
                    truth,
                    bias,
                    mse,
                    failures,
                    replications: cfg.replications,
                    flagged: failures * 100 > cfg.replications,
                });
            }
        }
    }
    Ok(SimulationReport {
        x_spec: cfg.x.to_string(),
        y_spec: cfg.y.to_string(),
        seed: cfg.seed,
        cells,
    })
}

impl SimulationReport {
    /// Long-format CSV, one row per (t, n, mode) cell. The header is part of
    /// the output contract.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,t,n,mode,truth,bias,mse,failures,replications\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                self.x_spec, self.y_spec, c.t, c.n, c.mode, c.truth, c.bias, c.mse, c.failures,
                c.replications
            ));
        }
        out
    }

    pub fn cell(&self, t: f64, n: usize, mode: &str) -> Option<&McCell> {
        self.cells
            .iter()
            .find(|c| c.t == t && c.n == n && c.mode == mode)
    }
}

/// Wide, table-shaped CSV across several runs: rows keyed (t, n, metric),
/// one column per (assigned law, estimator mode) pair.
pub fn emit_table(reports: &[SimulationReport]) -> String {
    let mut columns: Vec<(String, &'static str)> = Vec::new();
    let mut keys: Vec<(f64, usize)> = Vec::new();
    for r in reports {
        for c in &r.cells {
            let col = (r.y_spec.clone(), c.mode);
            if !columns.contains(&col) {
                columns.push(col);
            }
            let key = (c.t, c.n);
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
    }
    keys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = String::from("t,n,metric");
    for (y, mode) in &columns {
        out.push_str(&format!(",{y}:{mode}"));
    }
    out.push('\n');
    for &(t, n) in &keys {
        for metric in ["bias", "mse"] {
            out.push_str(&format!("{t},{n},{metric}"));
            for (y, mode) in &columns {
                let cell = reports
                    .iter()
                    .filter(|r| &r.y_spec == y)
                    .flat_map(|r| r.cells.iter())
                    .find(|c| c.t == t && c.n == n && c.mode == *mode);
                match cell {
                    Some(c) => {
                        let v = if metric == "bias" { c.bias } else { c.mse };
                        out.push_str(&format!(",{v}"));
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Parse a run configuration from `key = value` text. Keys: `x`, `y`
/// (distribution specs), `t` and `n` (comma-separated grids),
/// `replications`, `seed`, `modes` (`ecdf`, `kernel`). Lines starting with
/// `#` are comments.
pub fn parse_config(text: &str) -> Result<McConfig> {
    let mut x = None;
    let mut y = None;
    let mut t_grid = None;
    let mut n_grid = None;
    let mut replications = None;
    let mut seed = 0u64;
    let mut modes = vec![SfEstimator::Ecdf, SfEstimator::Kernel];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "x" => x = Some(crate::distributions::parse_spec(value)?),
            "y" => y = Some(crate::distributions::parse_spec(value)?),
            "t" => {
                t_grid = Some(
                    value
                        .split(',')
                        .map(|v| {
                            v.trim()
                                .parse::<f64>()
                                .map_err(|_| Error::Parse(format!("bad t value {v:?}")))
                        })
                        .collect::<Result<Vec<f64>>>()?,
                )
            }
            "n" => {
                n_grid = Some(
                    value
                        .split(',')
                        .map(|v| {
                            v.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad n value {v:?}")))
                        })
                        .collect::<Result<Vec<usize>>>()?,
                )
            }
            "replications" => {
                replications = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad replications {value:?}")))?,
                )
            }
            "seed" => {
                seed = value
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad seed {value:?}")))?
            }
            "modes" => {
                modes = value
                    .split(',')
                    .map(|m| match m.trim() {
                        "ecdf" => Ok(SfEstimator::Ecdf),
                        "kernel" => Ok(SfEstimator::Kernel),
                        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
    }
    Ok(McConfig {
        x: x.ok_or_else(|| Error::Parse("config is missing x".into()))?,
        y: y.ok_or_else(|| Error::Parse("config is missing y".into()))?,
        t_grid: t_grid.ok_or_else(|| Error::Parse("config is missing t".into()))?,
        n_grid: n_grid.ok_or_else(|| Error::Parse("config is missing n".into()))?,
        replications: replications.ok_or_else(|| Error::Parse("config is missing replications".into()))?,
        seed,
        modes,
        estimator: EstimatorConfig::default(),
    })
}

/// The exponential block of the benchmark study: exp(1) against exp(λ) for
/// λ in {2, 5, 7}, t in {0.01, 0.05, 0.10}, n in {30, 50}.
pub fn table1_exponential_configs(replications: usize, seed: u64) -> Vec<McConfig> {
    [2.0, 5.0, 7.0]
        .iter()
        .enumerate()
        .map(|(i, &lam)| McConfig {
            x: Distribution::exponential(1.0).expect("valid"),
            y: Distribution::exponential(lam).expect("valid"),
            t_grid: vec![0.01, 0.05, 0.10],
            n_grid: vec![30, 50],
            replications,
            seed: seed.wrapping_add(i as u64),
            modes: vec![SfEstimator::Ecdf, SfEstimator::Kernel],
            estimator: EstimatorConfig::default(),
        })
        .collect()
}

/// The beta block: beta(1,1) against beta(1,4), beta(5,3), beta(6,6),
/// t in {0.01, 0.10, 0.30}, n in {30, 50}.
pub fn table1_beta_configs(replications: usize, seed: u64) -> Vec<McConfig> {
    [(1.0, 4.0), (5.0, 3.0), (6.0, 6.0)]
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| McConfig {
            x: Distribution::beta(1.0, 1.0).expect("valid"),
            y: Distribution::beta(a, b).expect("valid"),
            t_grid: vec![0.01, 0.10, 0.30],
            n_grid: vec![30, 50],
            replications,
            seed: seed.wrapping_add(100 + i as u64),
            modes: vec![SfEstimator::Ecdf, SfEstimator::Kernel],
            estimator: EstimatorConfig::default(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_config() -> McConfig {
        McConfig {
            x: Distribution::exponential(1.0).unwrap(),
            y: Distribution::exponential(2.0).unwrap(),
            t_grid: vec![0.01, 0.1],
            n_grid: vec![20, 30],
            replications: 40,
            seed: 7,
            modes: vec![SfEstimator::Ecdf, SfEstimator::Kernel],
            estimator: EstimatorConfig::default(),
        }
    }

    #[test]
    fn determinism_byte_identical() {
        let cfg = small_config();
        let a = run_mc(&cfg).unwrap().to_csv();
        let b = run_mc(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn cell_count_and_variance_nonnegative() {
        let report = run_mc(&small_config()).unwrap();
        assert_eq!(report.cells.len(), 2 * 2 * 2);
        for c in &report.cells {
            assert!(c.mse >= c.bias * c.bias - 1e-12);
        }
    }

    #[test]
    fn self_pair_bias_is_small_at_t_zero() {
        let cfg = McConfig {
            x: Distribution::exponential(1.0).unwrap(),
            y: Distribution::exponential(1.0).unwrap(),
            t_grid: vec![1e-9],
            n_grid: vec![200],
            replications: 200,
            seed: 11,
            modes: vec![SfEstimator::Kernel],
            estimator: EstimatorConfig::default(),
        };
        let report = run_mc(&cfg).unwrap();
        let cell = &report.cells[0];
        // Truth is the self-inaccuracy -1/8.
        assert_relative_eq!(cell.truth, -0.125, epsilon = 1e-9);
        assert!(cell.bias.abs() < 0.03, "bias {} too large", cell.bias);
    }

    #[test]
    fn emit_table_shapes() {
        assert_eq!(emit_table(&[]), "t,n,metric\n");
        let mut report = run_mc(&small_config()).unwrap();
        report.cells.truncate(1);
        let table = emit_table(&[report]);
        // Header plus bias and mse rows for the single cell.
        assert_eq!(table.lines().count(), 3);
    }

    #[test]
    fn exponential_block_has_36_cells() {
        let cfgs = table1_exponential_configs(2, 1);
        assert_eq!(cfgs.len(), 3);
        let total: usize = cfgs.iter().map(|c| run_mc(c).unwrap().cells.len()).sum();
        assert_eq!(total, 36);
    }

    #[test]
    fn config_roundtrip() {
        let text = "
            # benchmark block
            x = exp(rate=1)
            y = exp(rate=2)
            t = 0.01, 0.05
            n = 30, 50
            replications = 10
            seed = 3
            modes = ecdf, kernel
        ";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.t_grid, vec![0.01, 0.05]);
        assert_eq!(cfg.n_grid, vec![30, 50]);
        assert_eq!(cfg.replications, 10);
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.x.to_string(), "exp(rate=1)");
    }

    #[test]
    fn failures_counted_not_fatal() {
        // With t beyond most tiny samples, ecdf cells record failures.
        let cfg = McConfig {
            x: Distribution::uniform(0.0, 1.0).unwrap(),
            y: Distribution::uniform(0.0, 1.0).unwrap(),
            t_grid: vec![0.95],
            n_grid: vec![3],
            replications: 50,
            seed: 991,
            modes: vec![SfEstimator::Ecdf],
            estimator: EstimatorConfig::default(),
        };
        let report = run_mc(&cfg).unwrap();
        let cell = &report.cells[0];
        assert!(cell.failures > 0);
        assert!(cell.flagged);
        assert_eq!(cell.failures + (cell.replications - cell.failures), 50);
    }
}
