//! Extropy-based information measures.
//!
//! The central objects are the weighted inaccuracy between two lifetime laws,
//!
//! ```text
//! WJI(X, Y)     = -1/2 ∫ x f(x) g(x) dx
//! WRJI(X, Y; t) = -1/2 ∫_t^∞ x · f(x)/F̄(t) · g(x)/Ḡ(t) dx
//! ```
//!
//! together with weighted (residual) extropy, the discrimination gap WRDJ,
//! the past-window variant, and the survival-function analogues CRJ and
//! dynamic survival extropy.
//!
//! Every measure is evaluated through one of two routes: a registered closed
//! form (exponential pairs, same-shape Weibull pairs, power-function pairs on
//! the unit interval, uniform laws under a PHR exponent, the
//! exponential/Lindley pair, and Lindley self-pairs) or adaptive quadrature.
//! The two routes are cross-checked against each other in the test suite; the
//! quadrature oracle is authoritative.

use crate::distributions::{Distribution, Family, ModeSup};
use crate::error::{Error, Result};
use crate::quadrature::{self, integrate_with_breaks, truncate_upper, QuadResult, TAIL_EPS};
use serde::Serialize;

/// How a measure value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Quadrature,
}

/// A measure value with its evaluation route and an error estimate
/// (0 for closed forms, the quadrature bound plus truncated tail mass
/// otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureValue {
    pub value: f64,
    pub route: Route,
    pub abs_error: f64,
}

impl MeasureValue {
    fn closed(value: f64) -> Self {
        MeasureValue { value, route: Route::ClosedForm, abs_error: 0.0 }
    }

    fn quad(value: f64, abs_error: f64) -> Self {
        MeasureValue { value, route: Route::Quadrature, abs_error }
    }
}

/// Strictly increasing evaluation times, all inside the positive-survival
/// region of the distributions they are validated against.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid(Vec<f64>);

impl TimeGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Parse("time grid is empty".into()));
        }
        for w in points.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Parse("time grid must be strictly increasing".into()));
            }
        }
        if points.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::Parse("time grid points must be finite and >= 0".into()));
        }
        Ok(TimeGrid(points))
    }

    /// Parse `start:stop:step`, inclusive of both endpoints within 1e-12.
    pub fn from_range_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected start:stop:step, got {spec:?}")));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {p:?}"))))
            .collect::<Result<_>>()?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if step <= 0.0 || stop < start {
            return Err(Error::Parse("need stop >= start and step > 0".into()));
        }
        let mut points = Vec::new();
        let mut i = 0u64;
        loop {
            let p = start + i as f64 * step;
            if p > stop + 1e-12 {
                break;
            }
            points.push(p.min(stop));
            i += 1;
        }
        TimeGrid::new(points)
    }

    /// Survival positivity at every grid point, for every given law.
    pub fn validate_for(&self, dists: &[&Distribution]) -> Result<()> {
        for &t in &self.0 {
            for d in dists {
                sf_checked(d, t)?;
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }
}

/// Survival value at `t`, rejecting underflow: measures conditioned on
/// survival to `t` are errors (not NaN) once `sf(t)` vanishes.
fn sf_checked(d: &Distribution, t: f64) -> Result<f64> {
    let s = d.sf(t);
    if s < 1e-300 {
        return Err(Error::SurvivalZero { t });
    }
    Ok(s)
}

/// Upper cutoff for a product integrand of the two laws: the common support
/// end when finite, otherwise the larger of the two 1-1e-12 quantiles (the
/// dominating tail).
fn common_upper(x: &Distribution, y: &Distribution) -> f64 {
    let (_, hx) = x.support();
    let (_, hy) = y.support();
    if hx.is_finite() || hy.is_finite() {
        hx.min(hy)
    } else {
        truncate_upper(x, TAIL_EPS).max(truncate_upper(y, TAIL_EPS))
    }
}

/// Quantile anchors forced into the panel list. Heavy-tailed laws truncate
/// at enormous upper cutoffs; without anchors the first panel's nodes can
/// all miss the probability mass and the integrator would accept zero.
const ANCHOR_US: [f64; 10] =
    [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-6, 1.0 - 1e-9];

fn anchors(d: &Distribution) -> Vec<f64> {
    let mut b = d.breakpoints();
    for &u in &ANCHOR_US {
        if let Ok(x) = d.quantile(u) {
            b.push(x);
        }
    }
    b
}

fn merged_breaks(x: &Distribution, y: &Distribution) -> Vec<f64> {
    let mut b = anchors(x);
    b.extend(anchors(y));
    let (lx, _) = x.support();
    let (ly, _) = y.support();
    b.push(lx);
    b.push(ly);
    b
}

fn quad_value(r: QuadResult, scale: f64) -> MeasureValue {
    MeasureValue::quad(scale * r.value, scale.abs() * r.abs_error_estimate + TAIL_EPS)
}

// ---------------------------------------------------------------------------
// Closed-form registry
// ---------------------------------------------------------------------------

/// PHR exponent linking the pair, if the two laws satisfy Ḡ = F̄^γ by
/// construction: a `phr`-wrapped copy of the base, two exponentials, two
/// same-shape Weibulls, or structurally identical laws (γ = 1).
pub fn phr_gamma(x: &Distribution, y: &Distribution) -> Option<f64> {
    let cx = x.canonical();
    let cy = y.canonical();
    if cx == cy {
        return Some(1.0);
    }
    match (cx.family(), cy.family()) {
        (Family::Exponential { rate: a }, Family::Exponential { rate: b }) => Some(b / a),
        (
            Family::WeibullRate { rate: a, shape: k1 },
            Family::WeibullRate { rate: b, shape: k2 },
        ) if k1 == k2 => Some(b / a),
        (_, Family::Phr { base, gamma }) if base.canonical() == cx => Some(*gamma),
        (Family::Phr { base, gamma }, _) if base.canonical() == cy => Some(1.0 / gamma),
        (Family::Phr { base: bx, gamma: gx }, Family::Phr { base: by, gamma: gy })
            if bx.canonical() == by.canonical() =>
        {
            Some(gy / gx)
        }
        _ => None,
    }
}

/// View a law as cdf = x^k on (0,1) when it is one.
fn as_power_on_unit(d: &Distribution) -> Option<f64> {
    match d.family() {
        Family::PowerOnUnit { k } => Some(*k),
        Family::Uniform { lo, hi } if *lo == 0.0 && *hi == 1.0 => Some(1.0),
        _ => None,
    }
}

fn as_uniform(d: &Distribution) -> Option<(f64, f64)> {
    match d.family() {
        Family::Uniform { lo, hi } => Some((*lo, *hi)),
        _ => None,
    }
}

/// Uniform law under a PHR exponent: (c, d, γ). Covers uniform self-pairs
/// (γ = 1) and phr(uniform, γ) against its base.
fn uniform_phr_pair(x: &Distribution, y: &Distribution) -> Option<(f64, f64, f64)> {
    if let (Some((c, d)), Some((c2, d2))) = (as_uniform(x), as_uniform(y)) {
        if c == c2 && d == d2 {
            return Some((c, d, 1.0));
        }
        return None;
    }
    let check = |base: &Distribution, gamma: f64, other: &Distribution| {
        as_uniform(base).and_then(|(c, d)| {
            as_uniform(other)
                .filter(|&(c2, d2)| c2 == c && d2 == d)
                .map(|_| (c, d, gamma))
        })
    };
    match (x.family(), y.family()) {
        (_, Family::Phr { base, gamma }) => check(base, *gamma, x),
        (Family::Phr { base, gamma }, _) => check(base, *gamma, y),
        _ => None,
    }
}

fn as_exponential(d: &Distribution) -> Option<f64> {
    match d.canonical().family() {
        Family::Exponential { rate } => Some(*rate),
        _ => None,
    }
}

fn as_lindley(d: &Distribution) -> Option<f64> {
    match d.family() {
        Family::Lindley { lambda } => Some(*lambda),
        _ => None,
    }
}

/// Registered closed form for WRJI(X, Y; t), if any. WJI is the t = 0 case.
/// Callers have already checked survival positivity.
pub fn wrji_closed_value(x: &Distribution, y: &Distribution, t: f64) -> Option<f64> {
    let cx = x.canonical();
    let cy = y.canonical();
    // Exponential pair (includes phr(exp, γ) and the k-component series
    // system, whose derived law is exp(kθ)).
    if let (Some(a), Some(b)) = (as_exponential(&cx), as_exponential(&cy)) {
        let s = a + b;
        return Some(-(a * b * (s * t + 1.0)) / (2.0 * s * s));
    }
    // Same-shape Weibull pair.
    if let (
        Family::WeibullRate { rate: a, shape: k1 },
        Family::WeibullRate { rate: b, shape: k2 },
    ) = (cx.family(), cy.family())
    {
        if k1 == k2 {
            let s = a + b;
            return Some(-(k1 * a * b * (t.powf(*k1) * s + 1.0)) / (2.0 * s * s));
        }
    }
    // Uniform base under a PHR exponent.
    if let Some((c, d, gamma)) = uniform_phr_pair(&cx, &cy) {
        let tc = t.max(c);
        if tc >= d {
            return None;
        }
        return Some(-(gamma * tc + d) / (2.0 * (gamma + 1.0) * (d - tc)));
    }
    // Power-function pair on (0,1).
    if let (Some(j), Some(k)) = (as_power_on_unit(&cx), as_power_on_unit(&cy)) {
        if t >= 1.0 {
            return None;
        }
        let tc = t.max(0.0);
        let num = j * k * (1.0 - tc.powf(j + k));
        let den = 2.0 * (j + k) * (1.0 - tc.powf(j)) * (1.0 - tc.powf(k));
        return Some(-num / den);
    }
    // Exponential against Lindley (either order).
    let exp_lindley = match (as_exponential(&cx), as_lindley(&cy)) {
        (Some(th), Some(la)) => Some((th, la)),
        _ => match (as_lindley(&cx), as_exponential(&cy)) {
            (Some(la), Some(th)) => Some((th, la)),
            _ => None,
        },
    };
    if let Some((th, la)) = exp_lindley {
        let t2 = t * t;
        let num = (t2 + t) * la * la
            + ((2.0 * t2 + 2.0 * t) * th + 2.0 * t + 1.0) * la
            + (t2 + t) * th * th
            + (2.0 * t + 1.0) * th
            + 2.0;
        let s = la + th;
        return Some(-(th * la * la * num) / (2.0 * s * s * s * ((t + 1.0) * la + 1.0)));
    }
    // Lindley self-pair.
    if let (Some(l1), Some(l2)) = (as_lindley(&cx), as_lindley(&cy)) {
        if l1 == l2 {
            return wre_closed_value(&cx, t);
        }
    }
    // Any other structurally identical pair reduces to weighted residual
    // extropy of the common law.
    if cx == cy {
        return wre_closed_value(&cx, t);
    }
    None
}

/// Registered closed form for weighted residual extropy J^w(X; t).
pub fn wre_closed_value(x: &Distribution, t: f64) -> Option<f64> {
    let cx = x.canonical();
    match cx.family() {
        Family::Exponential { rate } => Some(-(2.0 * t * rate + 1.0) / 8.0),
        Family::WeibullRate { rate, shape } => {
            Some(-shape * (2.0 * rate * t.powf(*shape) + 1.0) / 8.0)
        }
        Family::Uniform { lo, hi } => {
            let tc = t.max(*lo);
            if tc >= *hi {
                return None;
            }
            Some(-(tc + hi) / (4.0 * (hi - tc)))
        }
        Family::PowerOnUnit { k } => {
            if t >= 1.0 {
                return None;
            }
            let tc = t.max(0.0);
            Some(-k * (1.0 + tc.powf(*k)) / (4.0 * (1.0 - tc.powf(*k))))
        }
        Family::Lindley { lambda } => {
            let la = *lambda;
            let num = (4.0 * t.powi(3) + 8.0 * t * t + 4.0 * t) * la.powi(3)
                + (6.0 * t * t + 8.0 * t + 2.0) * la * la
                + (6.0 * t + 4.0) * la
                + 3.0;
            let den = 16.0 * ((t + 1.0) * la + 1.0).powi(2);
            Some(-num / den)
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

/// Extropy J(X) = -1/2 ∫ f².
pub fn extropy(x: &Distribution) -> Result<MeasureValue> {
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    let r = integrate_with_breaks(|v| x.pdf(v).powi(2), lo, hi, &anchors(x), quadrature::TOL_VERIFY)?;
    Ok(quad_value(r, -0.5))
}

/// Weighted extropy J^w(X) = -1/2 ∫ x f²(x) dx.
pub fn weighted_extropy(x: &Distribution) -> Result<MeasureValue> {
    weighted_residual_extropy(x, x.support().0.min(0.0))
}

/// Weighted residual extropy J^w(X; t) = -1/2 ∫_t^∞ x (f/F̄(t))² dx.
pub fn weighted_residual_extropy(x: &Distribution, t: f64) -> Result<MeasureValue> {
    let s = sf_checked(x, t)?;
    if let Some(v) = wre_closed_value(x, t) {
        return Ok(MeasureValue::closed(v));
    }
    weighted_residual_extropy_quadrature_with_sf(x, t, s)
}

/// Quadrature route for J^w(X; t), regardless of registry entries.
pub fn weighted_residual_extropy_quadrature(x: &Distribution, t: f64) -> Result<MeasureValue> {
    let s = sf_checked(x, t)?;
    weighted_residual_extropy_quadrature_with_sf(x, t, s)
}

fn weighted_residual_extropy_quadrature_with_sf(
    x: &Distribution,
    t: f64,
    s: f64,
) -> Result<MeasureValue> {
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    let start = t.max(lo);
    let r = integrate_with_breaks(
        |v| v * x.pdf(v).powi(2),
        start,
        hi.max(start),
        &anchors(x),
        quadrature::TOL_VERIFY,
    )?;
    Ok(quad_value(r, -0.5 / (s * s)))
}

/// Residual extropy J(X; t) = -1/2 ∫_t^∞ (f/F̄(t))² dx.
pub fn residual_extropy(x: &Distribution, t: f64) -> Result<MeasureValue> {
    let s = sf_checked(x, t)?;
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    let start = t.max(lo);
    let r = integrate_with_breaks(
        |v| x.pdf(v).powi(2),
        start,
        hi.max(start),
        &anchors(x),
        quadrature::TOL_VERIFY,
    )?;
    Ok(quad_value(r, -0.5 / (s * s)))
}

/// Weighted inaccuracy WJI(X, Y) = -1/2 ∫ x f g dx. Symmetric in (X, Y).
pub fn wji(x: &Distribution, y: &Distribution) -> Result<MeasureValue> {
    let t0 = x.support().0.min(y.support().0).min(0.0);
    wrji(x, y, t0)
}

/// Weighted residual inaccuracy WRJI(X, Y; t). Symmetric in (X, Y); reduces
/// to WJI at t = 0 and to weighted residual extropy when X = Y.
pub fn wrji(x: &Distribution, y: &Distribution, t: f64) -> Result<MeasureValue> {
    sf_checked(x, t)?;
    sf_checked(y, t)?;
    if let Some(v) = wrji_closed_value(x, y, t) {
        return Ok(MeasureValue::closed(v));
    }
    wrji_quadrature(x, y, t)
}

/// Quadrature route for WRJI, regardless of registry entries.
pub fn wrji_quadrature(x: &Distribution, y: &Distribution, t: f64) -> Result<MeasureValue> {
    let sx = sf_checked(x, t)?;
    let sy = sf_checked(y, t)?;
    let lo = t.max(x.support().0).max(y.support().0);
    let hi = common_upper(x, y).max(lo);
    let r = integrate_with_breaks(
        |v| v * x.pdf(v) * y.pdf(v),
        lo,
        hi,
        &merged_breaks(x, y),
        quadrature::TOL_VERIFY,
    )?;
    Ok(quad_value(r, -0.5 / (sx * sy)))
}

/// Weighted residual discrimination WRDJ(X | Y; t). Computed as
/// WRJI - J^w(X; t), which makes the decomposition
/// `wrji = weighted_residual_extropy + wrdj` exact by construction.
pub fn wrdj(x: &Distribution, y: &Distribution, t: f64) -> Result<MeasureValue> {
    let a = wrji(x, y, t)?;
    let b = weighted_residual_extropy(x, t)?;
    let route = if a.route == Route::ClosedForm && b.route == Route::ClosedForm {
        Route::ClosedForm
    } else {
        Route::Quadrature
    };
    Ok(MeasureValue { value: a.value - b.value, route, abs_error: a.abs_error + b.abs_error })
}

/// Weighted discrimination J^w(X | Y) = 1/2 ∫ x f (f - g) dx; WRDJ at t = 0.
pub fn weighted_discrimination(x: &Distribution, y: &Distribution) -> Result<MeasureValue> {
    let t0 = x.support().0.min(y.support().0).min(0.0);
    wrdj(x, y, t0)
}

/// Weighted past inaccuracy over the window [0, t]:
/// -1/2 ∫_0^t x f g dx / (F(t) G(t)).
pub fn past_wji(x: &Distribution, y: &Distribution, t: f64) -> Result<MeasureValue> {
    let fx = x.cdf(t);
    let fy = y.cdf(t);
    if fx <= 0.0 || fy <= 0.0 {
        return Err(Error::Divergent(format!("cdf is zero at t = {t}; past window is empty")));
    }
    let lo = x.support().0.max(y.support().0);
    let hi = t.min(common_upper(x, y)).max(lo);
    let r = integrate_with_breaks(
        |v| v * x.pdf(v) * y.pdf(v),
        lo,
        hi,
        &merged_breaks(x, y),
        quadrature::TOL_VERIFY,
    )?;
    Ok(quad_value(r, -0.5 / (fx * fy)))
}

/// Cumulative residual extropy ξJ(X) = -1/2 ∫ F̄².
pub fn crj(x: &Distribution) -> Result<MeasureValue> {
    dynamic_survival_extropy(x, x.support().0.min(0.0))
}

/// Dynamic survival extropy ξJ(X; t) = -1/2 ∫_t^∞ (F̄(x)/F̄(t))² dx.
pub fn dynamic_survival_extropy(x: &Distribution, t: f64) -> Result<MeasureValue> {
    if !x.mean_finite() {
        return Err(Error::Divergent("law has infinite mean".into()));
    }
    let s = sf_checked(x, t)?;
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    let start = t.max(lo);
    let r = integrate_with_breaks(
        |v| x.sf(v).powi(2),
        start,
        hi.max(start),
        &anchors(x),
        quadrature::TOL_VERIFY,
    )?;
    Ok(quad_value(r, -0.5 / (s * s)))
}

/// Mean residual life m(t) = ∫_t^∞ F̄(x) dx / F̄(t).
pub fn mrl(x: &Distribution, t: f64) -> Result<f64> {
    if !x.mean_finite() {
        return Err(Error::Divergent("law has infinite mean".into()));
    }
    let s = sf_checked(x, t)?;
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    let start = t.max(lo);
    let r = integrate_with_breaks(
        |v| x.sf(v),
        start,
        hi.max(start),
        &anchors(x),
        quadrature::TOL_VERIFY,
    )?;
    Ok(r.value / s)
}

/// Vitality V(X; t) = E[X | X > t] = ∫_t^∞ x f dx / F̄(t) = t + mrl(t).
pub fn vitality(x: &Distribution, t: f64) -> Result<f64> {
    if !x.mean_finite() {
        return Err(Error::Divergent("law has infinite mean".into()));
    }
    let s = sf_checked(x, t)?;
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    let start = t.max(lo);
    let r = integrate_with_breaks(
        |v| v * x.pdf(v),
        start,
        hi.max(start),
        &anchors(x),
        quadrature::TOL_VERIFY,
    )?;
    Ok(r.value / s)
}

/// Weighted extropy of Y = φ(X) for a strictly increasing differentiable φ,
/// evaluated through the change-of-variables identity
/// J^w(φ(X)) = -1/2 ∫ f²(x) · φ(x)/φ'(x) dx (no transformed law needed).
pub fn wji_of_transform<P, D>(x: &Distribution, phi: P, dphi: D) -> Result<MeasureValue>
where
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (lo, _) = x.support();
    let hi = truncate_upper(x, TAIL_EPS);
    // Monotonicity check on an interior grid.
    let a = x.quantile(1e-6)?;
    let b = x.quantile(1.0 - 1e-6)?;
    for i in 0..=96 {
        let v = a + (b - a) * i as f64 / 96.0;
        if !(dphi(v) > 0.0) {
            return Err(Error::NonMonotoneTransform { x: v });
        }
    }
    let r = integrate_with_breaks(
        |v| {
            let d = dphi(v);
            if d <= 0.0 {
                return f64::NAN;
            }
            x.pdf(v).powi(2) * phi(v) / d
        },
        lo,
        hi,
        &anchors(x),
        quadrature::TOL_VERIFY,
    )?;
    Ok(quad_value(r, -0.5))
}

/// WRJI of the pair (base, PHR-derived law with exponent γ). Uses the same
/// registry/quadrature routing as [`wrji`].
pub fn wrji_phr(base: &Distribution, gamma: f64, t: f64) -> Result<MeasureValue> {
    let derived = Distribution::phr(base.clone(), gamma)?;
    wrji(base, &derived, t)
}

/// Constants of the window-shift relation wrji(t) = a(t)·[wji + c(t)]:
/// a(t) = 1/(F̄(t)Ḡ(t)) and c(t) = 1/2 ∫_0^t x f g dx.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationConstants {
    pub a: f64,
    pub c: f64,
}

pub fn wrji_relation_constants(
    x: &Distribution,
    y: &Distribution,
    t: f64,
) -> Result<RelationConstants> {
    let sx = sf_checked(x, t)?;
    let sy = sf_checked(y, t)?;
    let lo = x.support().0.max(y.support().0);
    let c = if t <= lo {
        0.0
    } else {
        let r = integrate_with_breaks(
            |v| v * x.pdf(v) * y.pdf(v),
            lo,
            t.min(common_upper(x, y)).max(lo),
            &merged_breaks(x, y),
            quadrature::TOL_VERIFY,
        )?;
        0.5 * r.value
    };
    Ok(RelationConstants { a: 1.0 / (sx * sy), c })
}

// ---------------------------------------------------------------------------
// Bound suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Holds,
    Violated,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    /// The bound value; NaN when the entry was skipped.
    pub bound: f64,
    pub status: BoundStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub wrji: f64,
    pub gamma: Option<f64>,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn violations(&self) -> Vec<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, BoundStatus::Violated))
            .collect()
    }
}

/// Numerical slack for bound comparisons: the right-hand sides are quadrature
/// values, so exact-equality cases (t = 0) need room for their error bounds.
fn holds(kind: BoundKind, wrji: f64, bound: f64) -> BoundStatus {
    let slack = 1e-7 * (1.0 + bound.abs().min(wrji.abs()));
    let ok = match kind {
        BoundKind::Lower => wrji >= bound - slack,
        BoundKind::Upper => wrji <= bound + slack,
    };
    if ok {
        BoundStatus::Holds
    } else {
        BoundStatus::Violated
    }
}

/// Best-effort integral for bound right-hand sides: a divergent bound
/// integral truncated at the tail cutoff still yields a valid (far looser)
/// one-sided value.
fn integral_best<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, breaks: &[f64]) -> Option<f64> {
    match integrate_with_breaks(f, lo, hi, breaks, 1e-6) {
        Ok(r) => Some(r.value),
        Err(Error::QuadratureNonConvergence { estimate, .. }) => Some(estimate),
        Err(_) => None,
    }
}

/// Whether `f` is nonincreasing on [a, b], sampled on a grid.
fn nonincreasing_on<F: Fn(f64) -> Option<f64>>(f: F, a: f64, b: f64) -> bool {
    let mut prev = f64::INFINITY;
    for i in 0..=64 {
        let x = a + (b - a) * i as f64 / 64.0;
        match f(x) {
            Some(v) => {
                if v > prev * (1.0 + 1e-9) + 1e-12 {
                    return false;
                }
                prev = v;
            }
            None => return false,
        }
    }
    true
}

/// Evaluate every applicable bound for the pair at time `t` and compare each
/// against WRJI. Inapplicable bounds are skipped, never failed.
pub fn bound_suite(x: &Distribution, y: &Distribution, t: f64) -> Result<BoundReport> {
    let sx = sf_checked(x, t)?;
    let sy = sf_checked(y, t)?;
    let w = wrji(x, y, t)?.value;
    let gamma = phr_gamma(x, y);
    let lo = t.max(x.support().0).max(y.support().0);
    let hi = common_upper(x, y).max(lo);
    let breaks = merged_breaks(x, y);
    let mut entries = Vec::new();

    let mut push = |name: &'static str, kind: BoundKind, bound: Option<f64>, skip: Option<String>| {
        let entry = match (bound, skip) {
            (Some(b), None) => BoundEntry { name, kind, bound: b, status: holds(kind, w, b) },
            (_, Some(reason)) => {
                BoundEntry { name, kind, bound: f64::NAN, status: BoundStatus::Skipped { reason } }
            }
            (None, None) => BoundEntry {
                name,
                kind,
                bound: f64::NAN,
                status: BoundStatus::Skipped { reason: "bound integral failed".into() },
            },
        };
        entries.push(entry);
    };

    // Trivial cap: every WRJI value is nonpositive.
    push("nonpositive_cap", BoundKind::Upper, Some(0.0), None);

    // Scaled whole-line inaccuracy floor: wrji >= wji / (F̄(t) Ḡ(t)).
    let wji_v = wji(x, y)?.value;
    push("scaled_inaccuracy_floor", BoundKind::Lower, Some(wji_v / (sx * sy)), None);

    if let Some(g) = gamma {
        // Hazard-weight floor: -(γ/2) ∫_t x λ_F²(x) dx.
        let b = integral_best(
            |v| {
                let s = x.sf(v);
                if s <= 0.0 {
                    return 0.0;
                }
                let h = x.pdf(v) / s;
                v * h * h
            },
            lo,
            hi,
            &breaks,
        )
        .map(|i| -(g / 2.0) * i);
        push("hazard_weight_floor", BoundKind::Lower, b, None);

        // Survival-damped hazard floor: -(γ/(2F̄(t))) ∫_t x F̄(x) λ_F²(x) dx.
        let b = integral_best(
            |v| {
                let s = x.sf(v);
                if s <= 0.0 {
                    return 0.0;
                }
                let h = x.pdf(v) / s;
                v * s * h * h
            },
            lo,
            hi,
            &breaks,
        )
        .map(|i| -(g / (2.0 * sx)) * i);
        push("hazard_survival_floor", BoundKind::Lower, b, None);

        // Hazard-density floor: -(γ/(2F̄(t))) ∫_t x λ_F(x) f(x) dx.
        let b = integral_best(
            |v| {
                let s = x.sf(v);
                if s <= 0.0 {
                    return 0.0;
                }
                let p = x.pdf(v);
                v * p * p / s
            },
            lo,
            hi,
            &breaks,
        )
        .map(|i| -(g / (2.0 * sx)) * i);
        push("hazard_density_floor", BoundKind::Lower, b, None);

        // Mode-square floor: a₁ M² with a₁ = -(γ/(2F̄(t)^{γ+1})) ∫_t x F̄^{γ-1} dx.
        match x.mode_density_sup() {
            ModeSup::Bounded(m) => {
                let b = integral_best(|v| v * x.sf(v).powf(g - 1.0), lo, hi, &breaks)
                    .map(|i| -(g / (2.0 * sx.powf(g + 1.0))) * i * m * m);
                push("mode_square_floor", BoundKind::Lower, b, None);
            }
            ModeSup::Unbounded => push(
                "mode_square_floor",
                BoundKind::Lower,
                None,
                Some("density of X is unbounded".into()),
            ),
        }

        // Magnitude cap against whole-line inaccuracy: |wrji| <= |wji| / F̄(t)^{γ+1},
        // i.e. wrji >= wji / F̄(t)^{γ+1} on the negative scale.
        push(
            "phr_magnitude_floor",
            BoundKind::Lower,
            Some(wji_v / sx.powf(g + 1.0)),
            None,
        );

        // Scaled residual-extropy comparison, direction set by γ.
        let wre_v = weighted_residual_extropy(x, t)?.value;
        if g > 1.0 {
            push("residual_extropy_floor", BoundKind::Lower, Some(g * wre_v), None);
            push(
                "residual_extropy_cap",
                BoundKind::Upper,
                None,
                Some("requires gamma <= 1".into()),
            );
        } else {
            push(
                "residual_extropy_floor",
                BoundKind::Lower,
                None,
                Some("requires gamma > 1".into()),
            );
            push("residual_extropy_cap", BoundKind::Upper, Some(g * wre_v), None);
        }

        // Floor for decreasing densities bounded by one:
        // c₂ ∫_t x F̄^{γ-1} dx with c₂ = -γ/(2 F̄(t)^{γ+1}).
        let (lx, _) = x.support();
        let f0 = x.pdf(lx);
        let decreasing = nonincreasing_on(|v| Some(x.pdf(v)), lo, hi.min(truncate_upper(x, 1e-9)));
        if f0 <= 1.0 + 1e-12 && decreasing {
            let b = integral_best(|v| v * x.sf(v).powf(g - 1.0), lo, hi, &breaks)
                .map(|i| -(g / (2.0 * sx.powf(g + 1.0))) * i);
            push("bounded_density_floor", BoundKind::Lower, b, None);
        } else {
            push(
                "bounded_density_floor",
                BoundKind::Lower,
                None,
                Some("requires a nonincreasing density with f(0) <= 1".into()),
            );
        }
    } else {
        for name in [
            "hazard_weight_floor",
            "hazard_survival_floor",
            "hazard_density_floor",
            "mode_square_floor",
            "phr_magnitude_floor",
            "residual_extropy_floor",
            "bounded_density_floor",
        ] {
            push(name, BoundKind::Lower, None, Some("pair does not satisfy the PHR model".into()));
        }
        push("residual_extropy_cap", BoundKind::Upper, None, Some("pair does not satisfy the PHR model".into()));
    }

    // Vitality floor: -1/2 λ_G(t) V(X; t) for nonincreasing hazard of Y.
    let hz_upper = hi.min(truncate_upper(y, 1e-9));
    let hz_noninc = nonincreasing_on(|v| y.hazard(v).ok(), t.max(y.support().0), hz_upper);
    if !x.mean_finite() {
        push("vitality_floor", BoundKind::Lower, None, Some("mean of X is not finite".into()));
    } else if !hz_noninc {
        push(
            "vitality_floor",
            BoundKind::Lower,
            None,
            Some("hazard of Y is not nonincreasing".into()),
        );
    } else {
        let lam = y.hazard(t.max(y.support().0))?;
        let vit = vitality(x, t)?;
        push("vitality_floor", BoundKind::Lower, Some(-0.5 * lam * vit), None);
    }

    // Discrimination cap: wrdj <= -wre, equivalent to wrji <= 0 under the
    // decomposition but evaluated on its own terms.
    let wre_v = weighted_residual_extropy(x, t)?.value;
    let wrdj_v = wrdj(x, y, t)?.value;
    let status = if wrdj_v <= -wre_v + 1e-9 { BoundStatus::Holds } else { BoundStatus::Violated };
    entries.push(BoundEntry {
        name: "discrimination_cap",
        kind: BoundKind::Upper,
        bound: -wre_v,
        status,
    });

    Ok(BoundReport { wrji: w, gamma, entries })
}
