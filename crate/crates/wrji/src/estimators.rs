//! Non-parametric estimation of WRJI from two samples.
//!
//! The density numerators are kernel density estimates
//! `f_n(x) = (1/nh) Σ K((x - X_i)/h)`; the survival normalizers come either
//! from the empirical survival function `F̄_n(t) = #{X_i > t}/n` (strict
//! inequality, exactly as defined) or from the kernel-smoothed CDF
//! `F̂_h(x) = (1/n) Σ W((x - X_i)/h)` with `W(u) = ∫_{-∞}^u K`.
//!
//! Bandwidths are chosen by least-squares cross-validation: the density
//! criterion `∫f_n² - (2/n) Σ f_{n,-i}(X_i)` and the CDF criterion
//! `(1/n) Σ ∫ (I(x ≥ X_i) - F̂_{h,-i}(x))² dx`.

use crate::distributions::golden_max;
use crate::error::{Error, Result};
use crate::quadrature::{self, integrate};
use crate::special::{normal_cdf, normal_pdf};

/// Kernel functions satisfying ∫|K| < ∞, sup|K| < ∞ and u·K(u) → 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelSpec {
    #[default]
    Gaussian,
    Epanechnikov,
}

impl KernelSpec {
    /// Kernel density K(u).
    pub fn k(&self, u: f64) -> f64 {
        match self {
            KernelSpec::Gaussian => normal_pdf(u),
            KernelSpec::Epanechnikov => {
                if u.abs() <= 1.0 {
                    0.75 * (1.0 - u * u)
                } else {
                    0.0
                }
            }
        }
    }

    /// Integrated kernel W(u) = ∫_{-∞}^u K.
    pub fn w(&self, u: f64) -> f64 {
        match self {
            KernelSpec::Gaussian => normal_cdf(u),
            KernelSpec::Epanechnikov => {
                if u < -1.0 {
                    0.0
                } else if u > 1.0 {
                    1.0
                } else {
                    0.75 * (u - u * u * u / 3.0) + 0.5
                }
            }
        }
    }

    /// Effective support radius: K is numerically zero beyond it.
    fn radius(&self) -> f64 {
        match self {
            KernelSpec::Gaussian => 8.5,
            KernelSpec::Epanechnikov => 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::Gaussian => "gaussian",
            KernelSpec::Epanechnikov => "epanechnikov",
        }
    }
}

/// A sorted sample of finite reals, n >= 2. Ties are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DegenerateSample(format!(
                "need at least 2 observations, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::DegenerateSample("sample contains non-finite values".into()));
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample standard deviation (n - 1 denominator).
    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - m) * (v - m)).sum();
        (ss / (self.len() as f64 - 1.0)).sqrt()
    }

    /// Index range of observations within `[x - r, x + r]`.
    fn window(&self, x: f64, r: f64) -> (usize, usize) {
        let lo = self.values.partition_point(|&v| v < x - r);
        let hi = self.values.partition_point(|&v| v <= x + r);
        (lo, hi)
    }
}

/// Bandwidth selection rule for one estimated curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandwidthRule {
    Fixed(f64),
    /// Least-squares cross-validation against the density criterion.
    CvPdf,
    /// Cross-validation against the integrated-squared-error CDF criterion.
    CvCdf,
}

impl BandwidthRule {
    pub fn resolve(&self, s: &Sample, kernel: KernelSpec) -> Result<f64> {
        match self {
            BandwidthRule::Fixed(h) => {
                if !(h.is_finite() && *h > 0.0) {
                    return Err(Error::InvalidParameter(format!("bandwidth must be > 0, got {h}")));
                }
                Ok(*h)
            }
            BandwidthRule::CvPdf => cv_bandwidth_pdf(s, kernel),
            BandwidthRule::CvCdf => cv_bandwidth_cdf(s, kernel),
        }
    }
}

/// Kernel density estimate at `x`.
pub fn kde_pdf(s: &Sample, kernel: KernelSpec, h: f64, x: f64) -> f64 {
    let n = s.len() as f64;
    let (lo, hi) = s.window(x, kernel.radius() * h);
    let mut acc = 0.0;
    for &xi in &s.values()[lo..hi] {
        acc += kernel.k((x - xi) / h);
    }
    acc / (n * h)
}

/// Empirical survival function with strict inequality: #{X_i > t} / n.
pub fn ecdf_sf(s: &Sample, t: f64) -> f64 {
    let above = s.len() - s.values.partition_point(|&v| v <= t);
    above as f64 / s.len() as f64
}

/// Kernel-smoothed survival function 1 - (1/n) Σ W((t - X_i)/h).
pub fn kernel_sf(s: &Sample, kernel: KernelSpec, h: f64, t: f64) -> f64 {
    let n = s.len() as f64;
    let r = kernel.radius() * h;
    let (lo, hi) = s.window(t, r);
    // Observations far below t contribute W = 1 each; far above, 0.
    let mut acc = lo as f64;
    for &xi in &s.values()[lo..hi] {
        acc += kernel.w((t - xi) / h);
    }
    (1.0 - acc / n).clamp(0.0, 1.0)
}

const CV_REL_TOL: f64 = 1e-4;

/// Search bracket for cross-validated bandwidths:
/// [0.05 σ̂ n^{-1/5}, 5 σ̂].
fn cv_bracket(s: &Sample) -> Result<(f64, f64)> {
    if s.len() < 2 {
        return Err(Error::DegenerateSample("cross-validation needs n >= 2".into()));
    }
    let sd = s.std_dev();
    if !(sd > 0.0) {
        return Err(Error::DegenerateSample("all observations identical".into()));
    }
    let n = s.len() as f64;
    Ok((0.05 * sd * n.powf(-0.2), 5.0 * sd))
}

/// Coarse log-grid scan followed by golden-section refinement.
fn minimize_score<F: Fn(f64) -> f64>(score: F, h_lo: f64, h_hi: f64) -> f64 {
    const COARSE: usize = 10;
    let ratio = (h_hi / h_lo).ln();
    let mut best_i: usize = 0;
    let mut best = f64::INFINITY;
    for i in 0..COARSE {
        let h = h_lo * (ratio * i as f64 / (COARSE - 1) as f64).exp();
        let v = score(h);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let grid = |i: usize| h_lo * (ratio * i as f64 / (COARSE - 1) as f64).exp();
    let a = grid(best_i.saturating_sub(1));
    let b = grid((best_i + 1).min(COARSE - 1));
    // Reuse the maximizer with a negated score.
    let mut best_h = a;
    let mut best_v = f64::INFINITY;
    golden_max(
        |h| {
            let v = score(h);
            if v < best_v {
                best_v = v;
                best_h = h;
            }
            -v
        },
        a,
        b,
        CV_REL_TOL,
    );
    best_h
}

/// Least-squares cross-validated bandwidth for the density estimate. For the
/// Gaussian kernel ∫f_n² is evaluated exactly through the Gaussian-Gaussian
/// convolution; other kernels fall back to numeric integration.
pub fn cv_bandwidth_pdf(s: &Sample, kernel: KernelSpec) -> Result<f64> {
    let (h_lo, h_hi) = cv_bracket(s)?;
    let score = |h: f64| lscv_pdf_score(s, kernel, h);
    Ok(minimize_score(score, h_lo, h_hi))
}

fn lscv_pdf_score(s: &Sample, kernel: KernelSpec, h: f64) -> f64 {
    let n = s.len() as f64;
    let xs = s.values();
    match kernel {
        KernelSpec::Gaussian => {
            // ∫f_n² = (1/(n²h)) Σ_{ij} φ_{√2}((X_i-X_j)/h) with
            // φ_{√2}(z) = e^{-z²/4}/(2√π); the leave-one-out term is a plain
            // pairwise Gaussian sum.
            const INV_TWO_SQRT_PI: f64 = 0.282_094_791_773_878_14;
            let cutoff = 40.0 * h;
            let mut s_conv = 0.0; // Σ_{i<j} φ_√2(d/h)
            let mut s_loo = 0.0; // Σ_{i<j} φ(d/h)
            for i in 0..xs.len() {
                for j in (i + 1)..xs.len() {
                    let d = xs[j] - xs[i];
                    if d > cutoff {
                        break;
                    }
                    let z = d / h;
                    s_conv += (-0.25 * z * z).exp() * INV_TWO_SQRT_PI;
                    s_loo += normal_pdf(z);
                }
            }
            let int_f2 = (n * INV_TWO_SQRT_PI + 2.0 * s_conv) / (n * n * h);
            let loo = 4.0 * s_loo / (n * (n - 1.0) * h);
            int_f2 - loo
        }
        _ => {
            // Numeric ∫f_n² on the kernel-extended range, plus the pairwise
            // leave-one-out sum.
            let lo = s.min() - kernel.radius() * h;
            let hi = s.max() + kernel.radius() * h;
            let int_f2 = integrate(|x| kde_pdf(s, kernel, h, x).powi(2), lo, hi, 1e-9)
                .map(|r| r.value)
                .unwrap_or(f64::INFINITY);
            let mut s_loo = 0.0;
            for i in 0..xs.len() {
                for j in (i + 1)..xs.len() {
                    let d = xs[j] - xs[i];
                    if d > kernel.radius() * h {
                        break;
                    }
                    s_loo += kernel.k(d / h);
                }
            }
            int_f2 - 4.0 * s_loo / (n * (n - 1.0) * h)
        }
    }
}

/// Cross-validated bandwidth for the smoothed CDF. The integrated squared
/// error is evaluated by composite Simpson quadrature on the fixed window
/// `[min - 4·h_hi, max + 4·h_hi]`, so the criterion is smooth in h.
pub fn cv_bandwidth_cdf(s: &Sample, kernel: KernelSpec) -> Result<f64> {
    let (h_lo, h_hi) = cv_bracket(s)?;
    let window = (s.min() - 4.0 * h_hi, s.max() + 4.0 * h_hi);
    let score = |h: f64| cdf_cv_score(s, kernel, h, window);
    Ok(minimize_score(score, h_lo, h_hi))
}

fn cdf_cv_score(s: &Sample, kernel: KernelSpec, h: f64, window: (f64, f64)) -> f64 {
    const PANELS: usize = 256; // Simpson points = PANELS + 1
    let n = s.len();
    let nf = n as f64;
    let xs = s.values();
    let mut scratch = vec![0.0f64; n];
    let (a, b) = window;
    let dx = (b - a) / PANELS as f64;
    let mut total = 0.0;
    for p in 0..=PANELS {
        let x = a + dx * p as f64;
        let mut sum_w = 0.0;
        for (i, &xi) in xs.iter().enumerate() {
            let w = kernel.w((x - xi) / h);
            scratch[i] = w;
            sum_w += w;
        }
        let mut sq = 0.0;
        for (i, &xi) in xs.iter().enumerate() {
            let loo = (sum_w - scratch[i]) / (nf - 1.0);
            let ind = if x >= xi { 1.0 } else { 0.0 };
            let d = ind - loo;
            sq += d * d;
        }
        let weight = if p == 0 || p == PANELS {
            1.0
        } else if p % 2 == 1 {
            4.0
        } else {
            2.0
        };
        total += weight * sq / nf;
    }
    total * dx / 3.0
}

/// Which survival normalizer the plug-in estimator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfEstimator {
    /// Empirical survival function (step normalizers).
    Ecdf,
    /// Kernel-smoothed survival function.
    Kernel,
}

impl SfEstimator {
    pub fn name(&self) -> &'static str {
        match self {
            SfEstimator::Ecdf => "ecdf",
            SfEstimator::Kernel => "kernel",
        }
    }
}

/// Kernel and bandwidth configuration for the two-sample estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub kernel: KernelSpec,
    /// Bandwidth for the density numerators.
    pub density_rule: BandwidthRule,
    /// Bandwidth for the kernel-smoothed survival normalizers.
    pub survival_rule: BandwidthRule,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            kernel: KernelSpec::Gaussian,
            density_rule: BandwidthRule::CvPdf,
            survival_rule: BandwidthRule::CvCdf,
        }
    }
}

/// A two-sample WRJI estimator with resolved bandwidths. Building one
/// resolves the cross-validated bandwidths once; evaluation at different
/// times then reuses them.
#[derive(Debug, Clone)]
pub struct WrjiEstimator {
    sx: Sample,
    sy: Sample,
    kernel: KernelSpec,
    h_fx: f64,
    h_fy: f64,
    h_sx: f64,
    h_sy: f64,
    upper: f64,
}

impl WrjiEstimator {
    pub fn new(sx: Sample, sy: Sample, cfg: &EstimatorConfig) -> Result<Self> {
        // Divergence guard: a vanishing bandwidth concentrates the kernel
        // mass into spikes and drives the estimate to -∞.
        let floor_x = 1e-6 * sx.spread();
        let floor_y = 1e-6 * sy.spread();
        let h_fx = cfg.density_rule.resolve(&sx, cfg.kernel)?.max(floor_x);
        let h_fy = cfg.density_rule.resolve(&sy, cfg.kernel)?.max(floor_y);
        let h_sx = cfg.survival_rule.resolve(&sx, cfg.kernel)?.max(floor_x);
        let h_sy = cfg.survival_rule.resolve(&sy, cfg.kernel)?.max(floor_y);
        // Integration cutoff: beyond the largest observation plus five
        // density bandwidths the kernel tail mass per point is below 3e-7.
        let upper = sx.max().max(sy.max()) + 5.0 * h_fx.max(h_fy);
        Ok(WrjiEstimator { sx, sy, kernel: cfg.kernel, h_fx, h_fy, h_sx, h_sy, upper })
    }

    pub fn density_bandwidths(&self) -> (f64, f64) {
        (self.h_fx, self.h_fy)
    }

    pub fn survival_bandwidths(&self) -> (f64, f64) {
        (self.h_sx, self.h_sy)
    }

    /// -1/2 ∫_t^U x f_n(x) g_n(x) dx (the shared numerator of both
    /// estimators).
    pub fn numerator(&self, t: f64) -> Result<f64> {
        if t >= self.upper {
            return Ok(0.0);
        }
        let f = |x: f64| {
            x * kde_pdf(&self.sx, self.kernel, self.h_fx, x)
                * kde_pdf(&self.sy, self.kernel, self.h_fy, x)
        };
        let r = integrate(f, t, self.upper, quadrature::TOL_ESTIMATOR)?;
        Ok(-0.5 * r.value)
    }

    /// Numerators for an ascending time grid, sharing segment integrals.
    pub fn numerator_grid(&self, ts: &[f64]) -> Result<Vec<f64>> {
        let mut cuts: Vec<f64> = ts.to_vec();
        cuts.retain(|t| *t < self.upper);
        let mut segs = Vec::with_capacity(cuts.len());
        for (i, &t) in cuts.iter().enumerate() {
            let next = if i + 1 < cuts.len() { cuts[i + 1] } else { self.upper };
            let f = |x: f64| {
                x * kde_pdf(&self.sx, self.kernel, self.h_fx, x)
                    * kde_pdf(&self.sy, self.kernel, self.h_fy, x)
            };
            segs.push(integrate(f, t, next, quadrature::TOL_ESTIMATOR)?.value);
        }
        let mut out = vec![0.0; ts.len()];
        let mut acc = 0.0;
        for i in (0..cuts.len()).rev() {
            acc += segs[i];
            out[i] = -0.5 * acc;
        }
        Ok(out)
    }

    fn normalizer(&self, t: f64, mode: SfEstimator) -> Result<f64> {
        match mode {
            SfEstimator::Ecdf => {
                let nx = ecdf_sf(&self.sx, t);
                let ny = ecdf_sf(&self.sy, t);
                if nx == 0.0 || ny == 0.0 {
                    return Err(Error::NoDataBeyondT { t });
                }
                Ok(nx * ny)
            }
            SfEstimator::Kernel => {
                let nx = kernel_sf(&self.sx, self.kernel, self.h_sx, t);
                let ny = kernel_sf(&self.sy, self.kernel, self.h_sy, t);
                if nx <= 1e-12 || ny <= 1e-12 {
                    return Err(Error::SurvivalZero { t });
                }
                Ok(nx * ny)
            }
        }
    }

    /// The plug-in estimate at time `t`. Always nonpositive.
    pub fn estimate(&self, t: f64, mode: SfEstimator) -> Result<f64> {
        let norm = self.normalizer(t, mode)?;
        Ok(self.numerator(t)? / norm)
    }

    /// Estimate from a precomputed numerator (see [`Self::numerator_grid`]).
    pub fn estimate_with_numerator(&self, t: f64, num: f64, mode: SfEstimator) -> Result<f64> {
        Ok(num / self.normalizer(t, mode)?)
    }
}

/// One-shot form of the estimator.
pub fn estimate_wrji(
    sx: &Sample,
    sy: &Sample,
    t: f64,
    mode: SfEstimator,
    cfg: &EstimatorConfig,
) -> Result<f64> {
    WrjiEstimator::new(sx.clone(), sy.clone(), cfg)?.estimate(t, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Distribution;
    use approx::assert_relative_eq;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kde_single_point_peak() {
        let s = sample(&[0.0, 100.0]); // second point far away
        let v = kde_pdf(&s, KernelSpec::Gaussian, 1.0, 0.0);
        // Peak contribution is φ(0)/2 with the distant point negligible.
        assert_relative_eq!(v, 0.398_942_280_401_432_7 / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn kde_two_point_midpoint() {
        let s = sample(&[-1.0, 1.0]);
        let v = kde_pdf(&s, KernelSpec::Gaussian, 1.0, 0.0);
        assert_relative_eq!(v, normal_pdf(1.0), epsilon = 1e-14);
    }

    #[test]
    fn kde_integrates_to_one() {
        let d = Distribution::exponential(1.0).unwrap();
        let s = Sample::new(d.sample(40, 7)).unwrap();
        for &h in &[0.1, 0.35, 1.0] {
            let r = integrate(
                |x| kde_pdf(&s, KernelSpec::Gaussian, h, x),
                s.min() - 10.0 * h,
                s.max() + 10.0 * h,
                1e-9,
            )
            .unwrap();
            assert_relative_eq!(r.value, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn kde_location_equivariance() {
        let d = Distribution::exponential(1.0).unwrap();
        let s = Sample::new(d.sample(25, 3)).unwrap();
        let shifted = Sample::new(s.values().iter().map(|v| v + 2.5).collect()).unwrap();
        for &x in &[0.3, 0.9, 2.2] {
            let a = kde_pdf(&s, KernelSpec::Gaussian, 0.4, x);
            let b = kde_pdf(&shifted, KernelSpec::Gaussian, 0.4, x + 2.5);
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn ecdf_sf_steps() {
        let s = sample(&[1.0, 2.0, 3.0]);
        assert_relative_eq!(ecdf_sf(&s, 1.5), 2.0 / 3.0);
        assert_relative_eq!(ecdf_sf(&s, 0.0), 1.0);
        // Strict inequality: nothing is greater than the maximum.
        assert_relative_eq!(ecdf_sf(&s, 3.0), 0.0);
        // Jump of exactly 1/n at each observation.
        assert_relative_eq!(ecdf_sf(&s, 1.0 - 1e-12) - ecdf_sf(&s, 1.0), 1.0 / 3.0);
    }

    #[test]
    fn kernel_sf_symmetry_points() {
        let s = sample(&[5.0, 5.0]);
        assert_relative_eq!(kernel_sf(&s, KernelSpec::Gaussian, 1.0, 5.0), 0.5, epsilon = 1e-12);
        let s = sample(&[0.0, 2.0]);
        // At the midpoint the two Gaussian CDF terms average to 1/2.
        assert_relative_eq!(kernel_sf(&s, KernelSpec::Gaussian, 1.0, 1.0), 0.5, epsilon = 1e-12);
        assert_relative_eq!(kernel_sf(&s, KernelSpec::Gaussian, 1.0, -50.0), 1.0, epsilon = 1e-12);
        assert_relative_eq!(kernel_sf(&s, KernelSpec::Gaussian, 1.0, 50.0), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kernel_sf_tracks_ecdf_for_small_h() {
        let d = Distribution::exponential(1.0).unwrap();
        let s = Sample::new(d.sample(60, 11)).unwrap();
        let h = 1e-4 * s.spread();
        for &t in &[0.21, 0.77, 1.9] {
            assert!((kernel_sf(&s, KernelSpec::Gaussian, h, t) - ecdf_sf(&s, t)).abs() < 1e-3);
        }
    }

    #[test]
    fn cv_pdf_is_locally_optimal() {
        let d = Distribution::exponential(1.0).unwrap();
        let s = Sample::new(d.sample(50, 42)).unwrap();
        let h = cv_bandwidth_pdf(&s, KernelSpec::Gaussian).unwrap();
        let at = |hh: f64| lscv_pdf_score(&s, KernelSpec::Gaussian, hh);
        assert!(at(h) <= at(h * 1.2) + 1e-12);
        assert!(at(h) <= at(h / 1.2) + 1e-12);
    }

    #[test]
    fn cv_pdf_two_point_sample() {
        let s = sample(&[0.0, 1.0]);
        let h = cv_bandwidth_pdf(&s, KernelSpec::Gaussian).unwrap();
        assert!(h.is_finite() && h > 0.0);
    }

    #[test]
    fn cv_pdf_scale_equivariance() {
        let d = Distribution::exponential(1.0).unwrap();
        let s = Sample::new(d.sample(50, 5)).unwrap();
        let scaled = Sample::new(s.values().iter().map(|v| 3.0 * v).collect()).unwrap();
        let h1 = cv_bandwidth_pdf(&s, KernelSpec::Gaussian).unwrap();
        let h2 = cv_bandwidth_pdf(&scaled, KernelSpec::Gaussian).unwrap();
        assert_relative_eq!(h2 / h1, 3.0, epsilon = 0.03);
    }

    #[test]
    fn cv_cdf_is_locally_optimal_and_scales() {
        let d = Distribution::uniform(0.0, 1.0).unwrap();
        let s = Sample::new(d.sample(50, 9)).unwrap();
        let h = cv_bandwidth_cdf(&s, KernelSpec::Gaussian).unwrap();
        let window = (s.min() - 4.0 * 5.0 * s.std_dev(), s.max() + 4.0 * 5.0 * s.std_dev());
        let at = |hh: f64| cdf_cv_score(&s, KernelSpec::Gaussian, hh, window);
        assert!(at(h) <= at(h * 1.2) + 1e-12);
        assert!(at(h) <= at(h / 1.2) + 1e-12);

        let scaled = Sample::new(s.values().iter().map(|v| 2.0 * v).collect()).unwrap();
        let h2 = cv_bandwidth_cdf(&scaled, KernelSpec::Gaussian).unwrap();
        assert_relative_eq!(h2 / h, 2.0, epsilon = 0.03);
    }

    #[test]
    fn cv_cdf_stays_below_spread() {
        let d = Distribution::exponential(1.0).unwrap();
        let s = Sample::new(d.sample(1000, 13)).unwrap();
        let h = cv_bandwidth_cdf(&s, KernelSpec::Gaussian).unwrap();
        assert!(h < s.spread());
    }

    #[test]
    fn degenerate_sample_rejected() {
        let s = sample(&[2.0, 2.0, 2.0]);
        assert!(cv_bandwidth_pdf(&s, KernelSpec::Gaussian).is_err());
        assert!(cv_bandwidth_cdf(&s, KernelSpec::Gaussian).is_err());
    }

    #[test]
    fn estimator_nonpositive_and_errors_past_data() {
        let dx = Distribution::exponential(1.0).unwrap();
        let dy = Distribution::exponential(2.0).unwrap();
        let sx = Sample::new(dx.sample(60, 21)).unwrap();
        let sy = Sample::new(dy.sample(60, 22)).unwrap();
        let est = WrjiEstimator::new(sx.clone(), sy.clone(), &EstimatorConfig::default()).unwrap();
        for &t in &[0.0, 0.1, 0.5] {
            assert!(est.estimate(t, SfEstimator::Ecdf).unwrap() <= 0.0);
            assert!(est.estimate(t, SfEstimator::Kernel).unwrap() <= 0.0);
        }
        let beyond = sx.max().max(sy.max()) + 1.0;
        match est.estimate(beyond, SfEstimator::Ecdf) {
            Err(Error::NoDataBeyondT { .. }) => {}
            other => panic!("expected no-data-beyond-t, got {other:?}"),
        }
    }

    #[test]
    fn estimator_matches_closed_form_at_moderate_n() {
        // exp(1) vs exp(2) at t = 0.01: the target is -(3t+1)/9 ≈ -0.11444.
        let dx = Distribution::exponential(1.0).unwrap();
        let dy = Distribution::exponential(2.0).unwrap();
        let sx = Sample::new(dx.sample(500, 1001)).unwrap();
        let sy = Sample::new(dy.sample(500, 1002)).unwrap();
        let est = WrjiEstimator::new(sx, sy, &EstimatorConfig::default()).unwrap();
        let v = est.estimate(0.01, SfEstimator::Kernel).unwrap();
        let truth = -(3.0 * 0.01 + 1.0) / 9.0;
        assert!((v - truth).abs() < 0.05, "estimate {v} too far from {truth}");
    }

    #[test]
    fn bandwidth_floor_guards_spike_samples() {
        // Nearly coincident samples with a vanishing requested bandwidth:
        // the floor of 1e-6 x spread keeps the estimate finite.
        let sx = sample(&[1.0, 1.0 + 1e-3, 1.0 + 2e-3]);
        let cfg = EstimatorConfig {
            kernel: KernelSpec::Gaussian,
            density_rule: BandwidthRule::Fixed(1e-300),
            survival_rule: BandwidthRule::Fixed(1e-300),
        };
        let est = WrjiEstimator::new(sx.clone(), sx.clone(), &cfg).unwrap();
        let (hx, _) = est.density_bandwidths();
        assert!(hx >= 1e-6 * sx.spread());
        let v = est.estimate(0.5, SfEstimator::Ecdf).unwrap();
        assert!(v.is_finite() && v <= 0.0);
    }

    #[test]
    fn numerator_grid_matches_pointwise() {
        let dx = Distribution::exponential(1.0).unwrap();
        let sx = Sample::new(dx.sample(40, 31)).unwrap();
        let sy = Sample::new(dx.sample(40, 32)).unwrap();
        let est = WrjiEstimator::new(sx, sy, &EstimatorConfig::default()).unwrap();
        let ts = [0.05, 0.3, 0.9];
        let grid = est.numerator_grid(&ts).unwrap();
        for (i, &t) in ts.iter().enumerate() {
            assert_relative_eq!(grid[i], est.numerator(t).unwrap(), epsilon = 1e-7);
        }
    }
}
