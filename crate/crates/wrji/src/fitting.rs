//! Maximum-likelihood fitting of candidate lifetime families,
//! Kolmogorov-Smirnov goodness of fit, and the real-data WRJI comparison
//! pipeline. Ships the two benchmark datasets as embedded resources.

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::estimators::{EstimatorConfig, Sample, SfEstimator, WrjiEstimator};
use crate::measures;
use serde::Serialize;

/// Families fitted to the real datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitFamily {
    /// Log-logistic LL(α, λ).
    Ll,
    /// Alpha-power transformed log-logistic APLL(α, λ, a).
    Apll,
    /// Extended log-logistic ExLL(α, λ, a).
    Exll,
    /// Weibull with sf e^{-rate·x^shape}, reported as (shape, rate).
    Wei,
    /// Gamma exponentiated-exponential GEE(λ, α, θ).
    Gee,
    /// Exponential-exponential geometric EEG(α, θ, p).
    Eeg,
}

impl FitFamily {
    pub fn name(&self) -> &'static str {
        match self {
            FitFamily::Ll => "ll",
            FitFamily::Apll => "apll",
            FitFamily::Exll => "exll",
            FitFamily::Wei => "wei",
            FitFamily::Gee => "gee",
            FitFamily::Eeg => "eeg",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ll" | "loglogistic" => Ok(FitFamily::Ll),
            "apll" => Ok(FitFamily::Apll),
            "exll" => Ok(FitFamily::Exll),
            "wei" | "weibull" => Ok(FitFamily::Wei),
            "gee" => Ok(FitFamily::Gee),
            "eeg" => Ok(FitFamily::Eeg),
            other => Err(Error::Parse(format!("unknown fit family {other:?}"))),
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            FitFamily::Ll => &["alpha", "lambda"],
            FitFamily::Apll | FitFamily::Exll => &["alpha", "lambda", "a"],
            FitFamily::Wei => &["shape", "rate"],
            FitFamily::Gee => &["lambda", "alpha", "theta"],
            FitFamily::Eeg => &["alpha", "theta", "p"],
        }
    }

    /// Build the catalog distribution at the given natural-scale parameters.
    pub fn build(&self, params: &[f64]) -> Result<Distribution> {
        match self {
            FitFamily::Ll => Distribution::log_logistic(params[0], params[1]),
            FitFamily::Apll => Distribution::apll(params[0], params[1], params[2]),
            FitFamily::Exll => Distribution::exll(params[0], params[1], params[2]),
            FitFamily::Wei => Distribution::weibull_rate(params[1], params[0]),
            FitFamily::Gee => Distribution::gee(params[0], params[1], params[2]),
            FitFamily::Eeg => Distribution::eeg(params[0], params[1], params[2]),
        }
    }

    /// Unconstrained-space transform: log for positive parameters, logit for
    /// the EEG mixing probability.
    fn to_unconstrained(&self, params: &[f64]) -> Vec<f64> {
        params
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if *self == FitFamily::Eeg && i == 2 {
                    (p / (1.0 - p)).ln()
                } else {
                    p.ln()
                }
            })
            .collect()
    }

    fn to_natural(&self, z: &[f64]) -> Vec<f64> {
        z.iter()
            .enumerate()
            .map(|(i, &v)| {
                if *self == FitFamily::Eeg && i == 2 {
                    1.0 / (1.0 + (-v).exp())
                } else {
                    v.exp()
                }
            })
            .collect()
    }
}

/// Log-likelihood Σ log pdf; -∞ when the parameters are invalid or any
/// observation has zero density.
pub fn log_likelihood(family: FitFamily, params: &[f64], data: &[f64]) -> f64 {
    let dist = match family.build(params) {
        Ok(d) => d,
        Err(_) => return f64::NEG_INFINITY,
    };
    let mut ll = 0.0;
    for &x in data {
        let p = dist.pdf(x);
        if !(p > 0.0) || !p.is_finite() {
            return f64::NEG_INFINITY;
        }
        ll += p.ln();
    }
    ll
}

/// A completed fit.
#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub family: String,
    pub param_names: Vec<String>,
    pub params: Vec<f64>,
    pub log_likelihood: f64,
    pub ks_statistic: f64,
    pub ks_pvalue: f64,
    pub converged: bool,
}

impl FitReport {
    pub fn distribution(&self) -> Distribution {
        let family = FitFamily::from_name(&self.family).expect("report family name is valid");
        family.build(&self.params).expect("report parameters are valid")
    }
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex (derivative-free), in unconstrained space
// ---------------------------------------------------------------------------

struct NmOutcome {
    x: Vec<f64>,
    fx: f64,
    converged: bool,
}

fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, start: &[f64], step: f64) -> NmOutcome {
    let dim = start.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let max_iter = 4000;
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..dim {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut scores: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let mut converged = false;
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap_or(std::cmp::Ordering::Equal));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        // Relative simplex diameter against the best vertex.
        let scale = 1.0 + simplex[best].iter().map(|v| v.abs()).fold(0.0, f64::max);
        let diameter = simplex
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < 1e-8 * scale {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; dim];
        for &i in order.iter().take(dim) {
            for d in 0..dim {
                centroid[d] += simplex[i][d];
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| c + alpha * (c - w))
            .collect();
        let f_r = f(&reflect);
        if f_r < scores[best] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&reflect)
                .map(|(c, r)| c + gamma * (r - c))
                .collect();
            let f_e = f(&expand);
            if f_e < f_r {
                simplex[worst] = expand;
                scores[worst] = f_e;
            } else {
                simplex[worst] = reflect;
                scores[worst] = f_r;
            }
            continue;
        }
        if f_r < scores[second_worst] {
            simplex[worst] = reflect;
            scores[worst] = f_r;
            continue;
        }
        let contract: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| c + rho * (w - c))
            .collect();
        let f_c = f(&contract);
        if f_c < scores[worst] {
            simplex[worst] = contract;
            scores[worst] = f_c;
            continue;
        }
        // Shrink toward the best vertex.
        let best_point = simplex[best].clone();
        for i in 0..=dim {
            if i == best {
                continue;
            }
            for d in 0..dim {
                simplex[i][d] = best_point[d] + sigma * (simplex[i][d] - best_point[d]);
            }
            scores[i] = f(&simplex[i]);
        }
    }
    let (mut bi, mut bf) = (0, scores[0]);
    for (i, &s) in scores.iter().enumerate() {
        if s < bf {
            bi = i;
            bf = s;
        }
    }
    NmOutcome { x: simplex[bi].clone(), fx: bf, converged }
}

fn quantile_of(sorted: &[f64], q: f64) -> f64 {
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

/// Moment/quantile-based start points, five per family.
fn starts(family: FitFamily, data: &[f64]) -> Vec<Vec<f64>> {
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = quantile_of(&sorted, 0.5);
    let q25 = quantile_of(&sorted, 0.25);
    let q75 = quantile_of(&sorted, 0.75);
    let mean = data.iter().sum::<f64>() / data.len() as f64;
    let qr = (q75 / q25).max(1.0 + 1e-6);
    match family {
        FitFamily::Ll => {
            // Quantile ratio of LL: q75/q25 = 3^{2/α}.
            let alpha = (2.0 * 3f64.ln() / qr.ln()).clamp(0.2, 20.0);
            vec![
                vec![alpha, median],
                vec![alpha * 0.5, median],
                vec![alpha * 2.0, median],
                vec![alpha, median * 0.5],
                vec![alpha, median * 2.0],
            ]
        }
        FitFamily::Apll => {
            // The small-a ridge trades a collapsing tilt against a huge
            // scale; starts keep the tilt above one so the optimizer lands
            // on the interior mode of that basin.
            let alpha = (2.0 * 3f64.ln() / qr.ln()).clamp(0.2, 20.0);
            vec![
                vec![alpha, median, 1.5],
                vec![alpha, median, 2.0],
                vec![alpha, median, 4.0],
                vec![alpha * 0.5, median, 2.0],
                vec![alpha * 2.0, median * 0.5, 2.0],
            ]
        }
        FitFamily::Exll => {
            let alpha = (2.0 * 3f64.ln() / qr.ln()).clamp(0.2, 20.0);
            vec![
                vec![alpha, median, 1.0],
                vec![alpha, median, 2.0],
                vec![alpha, median, 0.5],
                vec![alpha * 0.5, median * 2.0, 2.0],
                vec![alpha * 2.0, median * 0.5, 2.0],
            ]
        }
        FitFamily::Wei => {
            // -ln sf is λ x^shape; two quantile anchors give the shape.
            let shape = ((4f64.ln() / (4f64 / 3.0).ln()).ln() / qr.ln()).clamp(0.2, 20.0);
            let rate = 2f64.ln() / median.powf(shape);
            vec![
                vec![shape, rate],
                vec![shape / 1.5, rate],
                vec![shape * 1.5, rate],
                vec![shape, rate * 0.5],
                vec![shape, rate * 2.0],
            ]
        }
        FitFamily::Gee => {
            let theta = 1.0 / mean;
            vec![
                vec![1.0, 1.0, theta],
                vec![1.0, 2.0, 1.5 * theta],
                vec![2.0, 2.0, 1.5 * theta],
                vec![1.0, 4.0, 2.0 * theta],
                vec![2.0, 1.0, theta],
            ]
        }
        FitFamily::Eeg => {
            let theta = 1.0 / mean;
            vec![
                vec![1.0, theta, 0.5],
                vec![2.0, 1.5 * theta, 0.2],
                vec![4.0, 2.0 * theta, 0.1],
                vec![2.0, theta, 0.5],
                vec![1.0, 2.0 * theta, 0.2],
            ]
        }
    }
}

/// Fit a family by derivative-free likelihood maximization from several
/// moment-based starts (plus any caller-provided ones); the best local
/// optimum wins. The returned report carries the K-S statistic and its
/// asymptotic p-value at the fitted parameters.
pub fn mle(family: FitFamily, data: &[f64], extra_starts: &[Vec<f64>]) -> Result<FitReport> {
    if data.is_empty() {
        return Err(Error::DegenerateSample("empty dataset".into()));
    }
    if data.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::DegenerateSample("observations must be positive and finite".into()));
    }
    let mut all_starts = starts(family, data);
    all_starts.extend(extra_starts.iter().cloned());
    let mut best: Option<NmOutcome> = None;
    for start in &all_starts {
        if start.len() != family.param_names().len() {
            return Err(Error::InvalidParameter(format!(
                "start point has {} parameters, family {} needs {}",
                start.len(),
                family.name(),
                family.param_names().len()
            )));
        }
        if start.iter().any(|&p| !(p > 0.0)) {
            continue;
        }
        let z0 = family.to_unconstrained(start);
        let objective = |z: &[f64]| {
            let p = family.to_natural(z);
            -log_likelihood(family, &p, data)
        };
        let mut run = nelder_mead(objective, &z0, 0.3);
        // One restart from the found point shakes off collapsed simplexes.
        let rerun = nelder_mead(objective, &run.x, 0.05);
        if rerun.fx < run.fx {
            run = rerun;
        }
        let better = match &best {
            Some(b) => run.fx < b.fx,
            None => true,
        };
        if better && run.fx.is_finite() {
            best = Some(run);
        }
    }
    let best = best.filter(|b| b.fx.is_finite()).ok_or_else(|| {
        Error::NonConvergence(format!("no start converged for family {}", family.name()))
    })?;
    let params = family.to_natural(&best.x);
    let dist = family.build(&params)?;
    let d = ks_statistic(data, |x| dist.cdf(x));
    Ok(FitReport {
        family: family.name().to_string(),
        param_names: family.param_names().iter().map(|s| s.to_string()).collect(),
        params,
        log_likelihood: -best.fx,
        ks_statistic: d,
        ks_pvalue: ks_pvalue(d, data.len()),
        converged: best.converged,
    })
}

/// One-sample Kolmogorov-Smirnov statistic
/// D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
pub fn ks_statistic<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> f64 {
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let fx = cdf(x);
        let upper = (i as f64 + 1.0) / n - fx;
        let lower = fx - i as f64 / n;
        d = d.max(upper).max(lower);
    }
    d
}

/// Asymptotic Kolmogorov tail probability
/// Q(z) = 2 Σ_{k≥1} (-1)^{k-1} e^{-2k²z²} at z = √n·D, truncated when the
/// terms fall below 1e-12.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    assert!((0.0..=1.0).contains(&d), "K-S statistic must lie in [0,1]");
    let z = (n as f64).sqrt() * d;
    if z <= 1e-12 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=1000 {
        let term = (-2.0 * (k as f64) * (k as f64) * z * z).exp();
        sum += sign * term;
        if term < 1e-12 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

// ---------------------------------------------------------------------------
// Embedded datasets
// ---------------------------------------------------------------------------

/// The two benchmark datasets, shipped exactly as printed in their sources
/// (the guinea-pig list keeps its out-of-order trailing values).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetRef {
    /// Remission times (months) of 128 bladder-cancer patients.
    BladderCancer128,
    /// Survival times (days) of 72 guinea pigs.
    GuineaPigs72,
}

impl DatasetRef {
    pub const ALL: [DatasetRef; 2] = [DatasetRef::BladderCancer128, DatasetRef::GuineaPigs72];

    pub fn name(&self) -> &'static str {
        match self {
            DatasetRef::BladderCancer128 => "bladder_cancer_128",
            DatasetRef::GuineaPigs72 => "guinea_pigs_72",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "bladder_cancer_128" => Ok(DatasetRef::BladderCancer128),
            "guinea_pigs_72" => Ok(DatasetRef::GuineaPigs72),
            other => Err(Error::Parse(format!("unknown dataset {other:?}"))),
        }
    }

    fn raw_text(&self) -> &'static str {
        match self {
            DatasetRef::BladderCancer128 => include_str!("../data/bladder_cancer_128.txt"),
            DatasetRef::GuineaPigs72 => include_str!("../data/guinea_pigs_72.txt"),
        }
    }

    /// Values in the order printed in the source.
    pub fn raw_values(&self) -> Vec<f64> {
        self.raw_text()
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.trim().parse::<f64>().expect("embedded dataset is numeric"))
            .collect()
    }

    /// Values sorted ascending.
    pub fn values(&self) -> Vec<f64> {
        let mut v = self.raw_values();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}

/// Read a one-number-per-line data file, or `file:column` to take a named or
/// zero-indexed column of a CSV file.
pub fn read_data_file(spec: &str) -> Result<Vec<f64>> {
    let (path, column) = match spec.rsplit_once(':') {
        Some((p, col)) if !col.is_empty() && std::path::Path::new(p).exists() => (p, Some(col)),
        _ => (spec, None),
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::UnreadableData(format!("{path}: {e}")))?;
    let values = match column {
        None => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.parse::<f64>()
                    .map_err(|_| Error::UnreadableData(format!("{path}: not a number {l:?}")))
            })
            .collect::<Result<Vec<f64>>>()?,
        Some(col) => {
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let header = lines
                .next()
                .ok_or_else(|| Error::UnreadableData(format!("{path}: empty file")))?;
            let names: Vec<&str> = header.split(',').map(str::trim).collect();
            let idx = match col.parse::<usize>() {
                Ok(i) => i,
                Err(_) => names
                    .iter()
                    .position(|n| *n == col)
                    .ok_or_else(|| Error::UnreadableData(format!("{path}: no column {col:?}")))?,
            };
            lines
                .map(|l| {
                    let field = l.split(',').nth(idx).ok_or_else(|| {
                        Error::UnreadableData(format!("{path}: row lacks column {idx}"))
                    })?;
                    field
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| Error::UnreadableData(format!("{path}: not a number {field:?}")))
                })
                .collect::<Result<Vec<f64>>>()?
        }
    };
    if values.is_empty() {
        return Err(Error::UnreadableData(format!("{path}: no usable values")));
    }
    Ok(values)
}

// ---------------------------------------------------------------------------
// Real-data WRJI comparison pipeline
// ---------------------------------------------------------------------------

/// One candidate's values along the time grid.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateCurve {
    pub name: String,
    /// Parametric WRJI(actual, candidate; t).
    pub jw: Vec<f64>,
    /// ECDF-normalized estimate from the data against a synthetic sample of
    /// the fitted candidate; None where the estimator failed.
    pub jwn: Vec<Option<f64>>,
    /// Kernel-normalized estimate, same sampling scheme.
    pub jwh: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub actual: String,
    pub t: Vec<f64>,
    /// Kernel-normalized self-estimate from the data alone (both densities
    /// estimated from the same sample).
    pub jwh_self: Vec<Option<f64>>,
    pub candidates: Vec<CandidateCurve>,
    /// Grid points dropped because survival vanished, with the reason.
    pub skipped: Vec<(f64, String)>,
}

impl ComparisonReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,jwh_self");
        for c in &self.candidates {
            out.push_str(&format!(",jw:{0},jwn:{0},jwh:{0}", c.name));
        }
        out.push('\n');
        let fmt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for (i, &t) in self.t.iter().enumerate() {
            out.push_str(&format!("{t},{}", fmt(&self.jwh_self[i])));
            for c in &self.candidates {
                out.push_str(&format!(",{},{},{}", c.jw[i], fmt(&c.jwn[i]), fmt(&c.jwh[i])));
            }
            out.push('\n');
        }
        out
    }
}

/// For each grid time, the parametric WRJI of (actual, candidate) by the
/// measure module, plus both plug-in estimates computed from the data sample
/// against a seeded synthetic sample of each fitted candidate (equal size).
pub fn wrji_model_comparison(
    data: &[f64],
    actual_name: &str,
    actual: &Distribution,
    candidates: &[(String, Distribution)],
    t_grid: &[f64],
    seed: u64,
) -> Result<ComparisonReport> {
    let sx = Sample::new(data.to_vec())?;
    let cfg = EstimatorConfig::default();
    let self_est = WrjiEstimator::new(sx.clone(), sx.clone(), &cfg)?;

    // Keep only times where every parametric law still has positive
    // survival.
    let mut kept: Vec<f64> = Vec::new();
    let mut skipped = Vec::new();
    'grid: for &t in t_grid {
        for (name, d) in std::iter::once((&actual_name.to_string(), actual))
            .chain(candidates.iter().map(|(n, d)| (n, d)))
        {
            if d.sf(t) < 1e-300 {
                skipped.push((t, format!("survival of {name} is zero at t = {t}")));
                continue 'grid;
            }
        }
        kept.push(t);
    }

    let self_nums = self_est.numerator_grid(&kept)?;
    let jwh_self: Vec<Option<f64>> = kept
        .iter()
        .enumerate()
        .map(|(i, &t)| self_est.estimate_with_numerator(t, self_nums[i], SfEstimator::Kernel).ok())
        .collect();

    let mut curves = Vec::new();
    for (ci, (name, dist)) in candidates.iter().enumerate() {
        let synthetic = dist.sample(sx.len(), seed.wrapping_add(ci as u64));
        let sy = Sample::new(synthetic)?;
        let est = WrjiEstimator::new(sx.clone(), sy, &cfg)?;
        let nums = est.numerator_grid(&kept)?;
        let mut jw = Vec::with_capacity(kept.len());
        let mut jwn = Vec::with_capacity(kept.len());
        let mut jwh = Vec::with_capacity(kept.len());
        for (i, &t) in kept.iter().enumerate() {
            jw.push(measures::wrji(actual, dist, t)?.value);
            jwn.push(est.estimate_with_numerator(t, nums[i], SfEstimator::Ecdf).ok());
            jwh.push(est.estimate_with_numerator(t, nums[i], SfEstimator::Kernel).ok());
        }
        curves.push(CandidateCurve { name: name.clone(), jw, jwn, jwh });
    }

    Ok(ComparisonReport {
        actual: actual_name.to_string(),
        t: kept,
        jwh_self,
        candidates: curves,
        skipped,
    })
}
