//! Catalog of parametric lifetime distributions.
//!
//! Every law exposes the same surface: `pdf`, `cdf`, `sf`, `hazard`,
//! `quantile`, seeded `sample`, and the supremum of the density. Values are
//! immutable after construction; parameter validation happens in the
//! constructors, so evaluation never re-checks parameters.
//!
//! The proportional-hazard-rate construction [`PhrPair`] derives a law with
//! survival function `F̄^γ` from any base law; its hazard is exactly `γ`
//! times the base hazard.

use crate::error::{Error, Result};
use crate::special;
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One polynomial segment of a piecewise CDF: `cdf(x) = Σ coeffs[i]·x^i`
/// on `[lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySegment {
    pub lo: f64,
    pub hi: f64,
    pub coeffs: Vec<f64>,
}

impl PolySegment {
    fn cdf(&self, x: f64) -> f64 {
        // Horner evaluation.
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn pdf(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * x + i as f64 * c;
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Rate parameterization: sf = e^{-rate·x}.
    Exponential { rate: f64 },
    /// Rate-shape parameterization: sf = e^{-rate·x^shape}.
    WeibullRate { rate: f64, shape: f64 },
    Lindley { lambda: f64 },
    Uniform { lo: f64, hi: f64 },
    Beta { alpha: f64, beta: f64 },
    /// cdf = x^k on (0,1); k = 1 is the standard uniform.
    PowerOnUnit { k: f64 },
    LogLogistic { alpha: f64, lambda: f64 },
    /// Alpha-power transform of the log-logistic.
    Apll { alpha: f64, lambda: f64, a: f64 },
    /// Extended log-logistic.
    Exll { alpha: f64, lambda: f64, a: f64 },
    /// Gamma exponentiated-exponential.
    Gee { lambda: f64, alpha: f64, theta: f64 },
    /// Exponential-exponential geometric.
    Eeg { alpha: f64, theta: f64, p: f64 },
    Gamma { shape: f64, rate: f64 },
    PiecewisePoly { segments: Vec<PolySegment> },
    /// Proportional-hazard-rate derived law: sf = sf_base^gamma.
    Phr { base: Box<Distribution>, gamma: f64 },
}

/// An immutable, validated lifetime distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    family: Family,
}

/// Supremum of a density over its support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeSup {
    Bounded(f64),
    Unbounded,
}

impl ModeSup {
    pub fn bounded(self) -> Option<f64> {
        match self {
            ModeSup::Bounded(v) => Some(v),
            ModeSup::Unbounded => None,
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

impl Distribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        require(rate.is_finite() && rate > 0.0, "exponential: rate > 0 required")?;
        Ok(Self { family: Family::Exponential { rate } })
    }

    pub fn weibull_rate(rate: f64, shape: f64) -> Result<Self> {
        require(
            rate.is_finite() && rate > 0.0 && shape.is_finite() && shape > 0.0,
            "weibull: rate > 0 and shape > 0 required",
        )?;
        Ok(Self { family: Family::WeibullRate { rate, shape } })
    }

    pub fn lindley(lambda: f64) -> Result<Self> {
        require(lambda.is_finite() && lambda > 0.0, "lindley: lambda > 0 required")?;
        Ok(Self { family: Family::Lindley { lambda } })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        require(lo.is_finite() && hi.is_finite() && lo < hi, "uniform: c < d required")?;
        Ok(Self { family: Family::Uniform { lo, hi } })
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        require(
            alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0,
            "beta: alpha > 0 and beta > 0 required",
        )?;
        Ok(Self { family: Family::Beta { alpha, beta } })
    }

    pub fn power_on_unit(k: f64) -> Result<Self> {
        require(k.is_finite() && k > 0.0, "power: k > 0 required")?;
        Ok(Self { family: Family::PowerOnUnit { k } })
    }

    pub fn log_logistic(alpha: f64, lambda: f64) -> Result<Self> {
        require(
            alpha.is_finite() && alpha > 0.0 && lambda.is_finite() && lambda > 0.0,
            "loglogistic: alpha > 0 and lambda > 0 required",
        )?;
        Ok(Self { family: Family::LogLogistic { alpha, lambda } })
    }

    pub fn apll(alpha: f64, lambda: f64, a: f64) -> Result<Self> {
        require(
            alpha.is_finite() && alpha > 0.0 && lambda.is_finite() && lambda > 0.0,
            "apll: alpha > 0 and lambda > 0 required",
        )?;
        require(a.is_finite() && a > 0.0 && a != 1.0, "apll: a > 0, a != 1 required")?;
        Ok(Self { family: Family::Apll { alpha, lambda, a } })
    }

    pub fn exll(alpha: f64, lambda: f64, a: f64) -> Result<Self> {
        require(
            alpha.is_finite() && alpha > 0.0 && lambda.is_finite() && lambda > 0.0,
            "exll: alpha > 0 and lambda > 0 required",
        )?;
        require(a.is_finite() && a > 0.0, "exll: a > 0 required")?;
        Ok(Self { family: Family::Exll { alpha, lambda, a } })
    }

    pub fn gee(lambda: f64, alpha: f64, theta: f64) -> Result<Self> {
        require(
            lambda.is_finite() && lambda > 0.0
                && alpha.is_finite() && alpha > 0.0
                && theta.is_finite() && theta > 0.0,
            "gee: lambda, alpha, theta > 0 required",
        )?;
        Ok(Self { family: Family::Gee { lambda, alpha, theta } })
    }

    pub fn eeg(alpha: f64, theta: f64, p: f64) -> Result<Self> {
        require(
            alpha.is_finite() && alpha > 0.0 && theta.is_finite() && theta > 0.0,
            "eeg: alpha > 0 and theta > 0 required",
        )?;
        require(p.is_finite() && p > 0.0 && p < 1.0, "eeg: 0 < p < 1 required")?;
        Ok(Self { family: Family::Eeg { alpha, theta, p } })
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Self> {
        require(
            shape.is_finite() && shape > 0.0 && rate.is_finite() && rate > 0.0,
            "gamma: shape > 0 and rate > 0 required",
        )?;
        Ok(Self { family: Family::Gamma { shape, rate } })
    }

    /// Piecewise-polynomial CDF. Segments must tile an interval, be
    /// continuous at the breakpoints, start at 0, end at 1, and be
    /// nondecreasing with nonnegative derivative.
    pub fn piecewise_poly(segments: Vec<PolySegment>) -> Result<Self> {
        require(!segments.is_empty(), "piecewise: at least one segment required")?;
        for seg in &segments {
            require(
                seg.lo.is_finite() && seg.hi.is_finite() && seg.lo < seg.hi,
                "piecewise: segment bounds must be finite and increasing",
            )?;
            require(!seg.coeffs.is_empty(), "piecewise: empty coefficient vector")?;
        }
        for w in segments.windows(2) {
            require(
                (w[0].hi - w[1].lo).abs() < 1e-12,
                "piecewise: segments must tile the support",
            )?;
            require(
                (w[0].cdf(w[0].hi) - w[1].cdf(w[1].lo)).abs() < 1e-12,
                "piecewise: cdf must be continuous at breakpoints",
            )?;
        }
        let first = &segments[0];
        let last = &segments[segments.len() - 1];
        require(first.cdf(first.lo).abs() < 1e-12, "piecewise: cdf must start at 0")?;
        require((last.cdf(last.hi) - 1.0).abs() < 1e-12, "piecewise: cdf must end at 1")?;
        for seg in &segments {
            for i in 0..=64 {
                let x = seg.lo + (seg.hi - seg.lo) * i as f64 / 64.0;
                require(seg.pdf(x) >= -1e-12, "piecewise: density must be nonnegative")?;
            }
        }
        Ok(Self { family: Family::PiecewisePoly { segments } })
    }

    /// Piecewise fixture A: cdf x²/2 on [0,1), (x²+2)/6 on [1,2).
    pub fn piecewise_fixture_a() -> Self {
        Self::piecewise_poly(vec![
            PolySegment { lo: 0.0, hi: 1.0, coeffs: vec![0.0, 0.0, 0.5] },
            PolySegment { lo: 1.0, hi: 2.0, coeffs: vec![1.0 / 3.0, 0.0, 1.0 / 6.0] },
        ])
        .expect("fixture A is valid")
    }

    /// Piecewise fixture B: cdf (x²+x)/4 on [0,1), x/2 on [1,2).
    pub fn piecewise_fixture_b() -> Self {
        Self::piecewise_poly(vec![
            PolySegment { lo: 0.0, hi: 1.0, coeffs: vec![0.0, 0.25, 0.25] },
            PolySegment { lo: 1.0, hi: 2.0, coeffs: vec![0.0, 0.5] },
        ])
        .expect("fixture B is valid")
    }

    /// Law derived from `base` by the proportional-hazard-rate relation
    /// sf = sf_base^gamma.
    pub fn phr(base: Distribution, gamma: f64) -> Result<Self> {
        require(gamma.is_finite() && gamma > 0.0, "phr: gamma > 0 required")?;
        Ok(Self { family: Family::Phr { base: Box::new(base), gamma } })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Reduce PHR wrappers that land back inside the catalog:
    /// phr(exp(θ), γ) = exp(γθ) and phr(weibull(θ, κ), γ) = weibull(γθ, κ).
    /// Nested PHR layers multiply their exponents.
    pub fn canonical(&self) -> Distribution {
        match &self.family {
            Family::Phr { base, gamma } => {
                let base = base.canonical();
                match base.family {
                    Family::Exponential { rate } => {
                        Distribution { family: Family::Exponential { rate: gamma * rate } }
                    }
                    Family::WeibullRate { rate, shape } => {
                        Distribution { family: Family::WeibullRate { rate: gamma * rate, shape } }
                    }
                    Family::Phr { base: inner, gamma: g2 } => Distribution {
                        family: Family::Phr { base: inner, gamma: gamma * g2 },
                    },
                    fam => Distribution {
                        family: Family::Phr { base: Box::new(Distribution { family: fam }), gamma: *gamma },
                    },
                }
            }
            _ => self.clone(),
        }
    }

    /// Support interval `[lo, hi]`; `hi` may be infinite.
    pub fn support(&self) -> (f64, f64) {
        match &self.family {
            Family::Exponential { .. }
            | Family::WeibullRate { .. }
            | Family::Lindley { .. }
            | Family::LogLogistic { .. }
            | Family::Apll { .. }
            | Family::Exll { .. }
            | Family::Gee { .. }
            | Family::Eeg { .. }
            | Family::Gamma { .. } => (0.0, f64::INFINITY),
            Family::Uniform { lo, hi } => (*lo, *hi),
            Family::Beta { .. } | Family::PowerOnUnit { .. } => (0.0, 1.0),
            Family::PiecewisePoly { segments } => {
                (segments[0].lo, segments[segments.len() - 1].hi)
            }
            Family::Phr { base, .. } => base.support(),
        }
    }

    /// Interior points where the density may be non-smooth. Integrands are
    /// split here before adaptive refinement.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.family {
            Family::PiecewisePoly { segments } => {
                segments.iter().skip(1).map(|s| s.lo).collect()
            }
            Family::Phr { base, .. } => base.breakpoints(),
            _ => Vec::new(),
        }
    }

    /// Whether E[X] is finite (needed by mean-residual-life style measures).
    pub fn mean_finite(&self) -> bool {
        match &self.family {
            Family::LogLogistic { alpha, .. } => *alpha > 1.0,
            Family::Apll { alpha, .. } => *alpha > 1.0,
            Family::Exll { alpha, a, .. } => alpha * a > 1.0,
            Family::Phr { base, gamma } => match base.family {
                // Tail sf^γ decays γ times faster in the polynomial sense.
                Family::LogLogistic { alpha, .. } => alpha * gamma > 1.0,
                _ => base.mean_finite(),
            },
            _ => true,
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !x.is_finite() || x < lo || x > hi {
            return 0.0;
        }
        match &self.family {
            Family::Exponential { rate } => rate * (-rate * x).exp(),
            Family::WeibullRate { rate, shape } => {
                if x == 0.0 {
                    // x^{shape-1} limit: 0 for shape > 1, rate for shape = 1.
                    return if *shape > 1.0 {
                        0.0
                    } else if *shape == 1.0 {
                        *rate
                    } else {
                        f64::INFINITY
                    };
                }
                rate * shape * x.powf(shape - 1.0) * (-rate * x.powf(*shape)).exp()
            }
            Family::Lindley { lambda } => {
                lambda * lambda / (lambda + 1.0) * (1.0 + x) * (-lambda * x).exp()
            }
            Family::Uniform { lo, hi } => 1.0 / (hi - lo),
            Family::Beta { alpha, beta } => {
                if (x == 0.0 && *alpha < 1.0) || (x == 1.0 && *beta < 1.0) {
                    return f64::INFINITY;
                }
                if (x == 0.0 && *alpha > 1.0) || (x == 1.0 && *beta > 1.0) {
                    return 0.0;
                }
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln()
                    - special::ln_beta(*alpha, *beta))
                .exp()
            }
            Family::PowerOnUnit { k } => {
                if x == 0.0 {
                    return if *k > 1.0 {
                        0.0
                    } else if *k == 1.0 {
                        1.0
                    } else {
                        f64::INFINITY
                    };
                }
                k * x.powf(k - 1.0)
            }
            Family::LogLogistic { alpha, lambda } => {
                if x == 0.0 {
                    return if *alpha > 1.0 {
                        0.0
                    } else if *alpha == 1.0 {
                        1.0 / lambda
                    } else {
                        f64::INFINITY
                    };
                }
                let r = (x / lambda).powf(*alpha);
                alpha / x * r / ((1.0 + r) * (1.0 + r))
            }
            Family::Apll { alpha, lambda, a } => {
                let ll = Distribution::log_logistic(*alpha, *lambda).unwrap();
                let g = ll.cdf(x);
                ll.pdf(x) * a.ln() / (a - 1.0) * (g * a.ln()).exp()
            }
            Family::Exll { alpha, lambda, a } => {
                let ll = Distribution::log_logistic(*alpha, *lambda).unwrap();
                let g = ll.cdf(x);
                let denom = 1.0 - (1.0 - a) * g;
                a * a * (1.0 - g).powf(a - 1.0) / denom.powf(a + 1.0) * ll.pdf(x)
            }
            Family::Gee { lambda, alpha, theta } => {
                if x == 0.0 {
                    return 0.0;
                }
                let em = (-theta * x).exp();
                let one_m = -f64::exp_m1(-theta * x); // 1 - e^{-θx}, accurate near 0
                let u = -alpha * one_m.ln();
                if u <= 0.0 {
                    return 0.0;
                }
                (alpha * theta * em / special::ln_gamma(*lambda).exp())
                    * one_m.powf(alpha - 1.0)
                    * u.powf(lambda - 1.0)
            }
            Family::Eeg { alpha, theta, p } => {
                if x == 0.0 {
                    return if *alpha > 1.0 {
                        0.0
                    } else if *alpha == 1.0 {
                        theta / (1.0 - p)
                    } else {
                        f64::INFINITY
                    };
                }
                let em = (-theta * x).exp();
                let one_m = -f64::exp_m1(-theta * x);
                let v = one_m.powf(*alpha);
                let denom = 1.0 - p + p * v;
                alpha * theta * (1.0 - p) * em * one_m.powf(alpha - 1.0) / (denom * denom)
            }
            Family::Gamma { shape, rate } => {
                if x == 0.0 {
                    return if *shape > 1.0 {
                        0.0
                    } else if *shape == 1.0 {
                        *rate
                    } else {
                        f64::INFINITY
                    };
                }
                (shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x
                    - special::ln_gamma(*shape))
                .exp()
            }
            Family::PiecewisePoly { segments } => {
                let seg = segments
                    .iter()
                    .find(|s| x < s.hi)
                    .unwrap_or(&segments[segments.len() - 1]);
                seg.pdf(x).max(0.0)
            }
            Family::Phr { base, gamma } => {
                let sb = base.sf(x);
                if sb <= 0.0 {
                    return 0.0;
                }
                gamma * base.pdf(x) * sb.powf(gamma - 1.0)
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        match &self.family {
            Family::Exponential { rate } => -f64::exp_m1(-rate * x),
            Family::WeibullRate { rate, shape } => -f64::exp_m1(-rate * x.powf(*shape)),
            Family::Lindley { .. } => 1.0 - self.sf(x),
            Family::Uniform { lo, hi } => (x - lo) / (hi - lo),
            Family::Beta { alpha, beta } => special::beta_inc(*alpha, *beta, x),
            Family::PowerOnUnit { k } => x.powf(*k),
            Family::LogLogistic { alpha, lambda } => {
                let r = (x / lambda).powf(*alpha);
                r / (1.0 + r)
            }
            Family::Apll { alpha, lambda, a } => {
                let g = Distribution::log_logistic(*alpha, *lambda).unwrap().cdf(x);
                f64::exp_m1(g * a.ln()) / (a - 1.0)
            }
            Family::Eeg { .. } | Family::Exll { .. } | Family::Gee { .. } | Family::Phr { .. } => {
                1.0 - self.sf(x)
            }
            Family::Gamma { shape, rate } => special::gamma_p(*shape, rate * x),
            Family::PiecewisePoly { segments } => {
                let seg = segments
                    .iter()
                    .find(|s| x < s.hi)
                    .unwrap_or(&segments[segments.len() - 1]);
                seg.cdf(x).clamp(0.0, 1.0)
            }
        }
    }

    /// Survival function `1 - cdf`, evaluated directly where a direct form
    /// keeps the deep tail accurate.
    pub fn sf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo {
            return 1.0;
        }
        if x >= hi {
            return 0.0;
        }
        match &self.family {
            Family::Exponential { rate } => (-rate * x).exp(),
            Family::WeibullRate { rate, shape } => (-rate * x.powf(*shape)).exp(),
            Family::Lindley { lambda } => {
                (1.0 + lambda * x / (lambda + 1.0)) * (-lambda * x).exp()
            }
            Family::LogLogistic { alpha, lambda } => {
                let r = (x / lambda).powf(*alpha);
                1.0 / (1.0 + r)
            }
            Family::Apll { alpha, lambda, a } => {
                let ll = Distribution::log_logistic(*alpha, *lambda).unwrap();
                let g = ll.cdf(x);
                // (a - a^g)/(a - 1) = -a·expm1((g-1)·ln a)/(a-1)
                -a * f64::exp_m1((g - 1.0) * a.ln()) / (a - 1.0)
            }
            Family::Exll { alpha, lambda, a } => {
                let ll = Distribution::log_logistic(*alpha, *lambda).unwrap();
                let g = ll.cdf(x);
                let s = ll.sf(x);
                (s / (1.0 - (1.0 - a) * g)).powf(*a)
            }
            Family::Gee { lambda, alpha, theta } => {
                let one_m = -f64::exp_m1(-theta * x);
                let u = -alpha * one_m.ln();
                if !u.is_finite() {
                    return 1.0; // x at the support edge, no mass below
                }
                if u <= 0.0 {
                    return 0.0;
                }
                special::gamma_p(*lambda, u)
            }
            Family::Eeg { alpha, theta, p } => {
                let one_m = -f64::exp_m1(-theta * x);
                let v = one_m.powf(*alpha);
                let one_m_v = -f64::exp_m1(alpha * one_m.ln());
                (1.0 - p) * one_m_v / (1.0 - p + p * v)
            }
            Family::Gamma { shape, rate } => special::gamma_q(*shape, rate * x),
            Family::Phr { base, gamma } => base.sf(x).powf(*gamma),
            _ => 1.0 - self.cdf(x),
        }
    }

    /// Hazard rate pdf/sf; errors where the survival function vanishes.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        if let Family::Phr { base, gamma } = &self.family {
            return Ok(gamma * base.hazard(x)?);
        }
        let s = self.sf(x);
        if s <= 0.0 {
            return Err(Error::SurvivalZero { t: x });
        }
        Ok(self.pdf(x) / s)
    }

    /// Quantile inf{x : cdf(x) >= u} for u in (0,1). Closed form where the
    /// family admits one, otherwise bisection refined by secant steps to
    /// 1e-10 in x or 1e-14 in probability.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::QuantileRange { u });
        }
        let x = match &self.family {
            Family::Exponential { rate } => -f64::ln_1p(-u) / rate,
            Family::WeibullRate { rate, shape } => (-f64::ln_1p(-u) / rate).powf(1.0 / shape),
            Family::Uniform { lo, hi } => lo + u * (hi - lo),
            Family::PowerOnUnit { k } => u.powf(1.0 / k),
            Family::LogLogistic { alpha, lambda } => lambda * (u / (1.0 - u)).powf(1.0 / alpha),
            Family::Apll { alpha, lambda, a } => {
                let g = f64::ln_1p(u * (a - 1.0)) / a.ln();
                Distribution::log_logistic(*alpha, *lambda).unwrap().quantile(g)?
            }
            Family::Exll { alpha, lambda, a } => {
                let s = (1.0 - u).powf(1.0 / a);
                let g = (1.0 - s) / (1.0 - s * (1.0 - a));
                Distribution::log_logistic(*alpha, *lambda).unwrap().quantile(g)?
            }
            Family::Eeg { alpha, theta, p } => {
                let v = u * (1.0 - p) / (1.0 - u * p);
                -f64::ln_1p(-v.powf(1.0 / alpha)) / theta
            }
            Family::Phr { base, gamma } => {
                // 1-(1-u)^{1/γ}, kept strictly below 1 so extreme tails
                // (γ < 1) don't round onto the boundary.
                let ub = (-f64::exp_m1(f64::ln_1p(-u) / gamma)).min(1.0 - f64::EPSILON);
                base.quantile(ub)?
            }
            _ => self.quantile_root(u),
        };
        Ok(x)
    }

    /// Generic quantile by bracketing root search on the CDF.
    fn quantile_root(&self, u: f64) -> f64 {
        let (lo_s, hi_s) = self.support();
        let mut lo = lo_s;
        let mut hi = if hi_s.is_finite() {
            hi_s
        } else {
            // Expand until the bracket contains u.
            let mut h = lo_s.max(0.0) + 1.0;
            let mut guard = 0;
            while self.cdf(h) < u && guard < 200 {
                h = lo_s + (h - lo_s) * 2.0;
                guard += 1;
            }
            h
        };
        let mut f_lo = self.cdf(lo) - u; // <= 0
        for _ in 0..200 {
            if hi - lo < 1e-10 * hi.abs().max(1.0) {
                break;
            }
            // Secant proposal, falling back to bisection whenever it leaves
            // the bracket or stalls.
            let f_hi = self.cdf(hi) - u;
            let mid = if (f_hi - f_lo).abs() > 1e-300 {
                let s = lo - f_lo * (hi - lo) / (f_hi - f_lo);
                if s > lo && s < hi {
                    // Blend with the midpoint so the bracket keeps shrinking
                    // even when the secant step hugs one edge.
                    0.5 * (s + 0.5 * (lo + hi))
                } else {
                    0.5 * (lo + hi)
                }
            } else {
                0.5 * (lo + hi)
            };
            let f_mid = self.cdf(mid) - u;
            if f_mid.abs() < 1e-14 {
                return mid;
            }
            if f_mid < 0.0 {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    ///`n` i.i.d. draws by inverse-CDF sampling from a seeded generator.
    /// The same seed always produces the same output.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n)
    }

    /// Draws using a caller-provided generator (used by the simulation
    /// harness, which manages its own seed splitting).
    pub fn sample_with<R: RngCore>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| {
                let u = open_unit(rng);
                self.quantile(u).expect("quantile is defined on (0,1)")
            })
            .collect()
    }

    /// Supremum of the density over the support. Families with an unbounded
    /// density report [`ModeSup::Unbounded`] instead of a value.
    pub fn mode_density_sup(&self) -> ModeSup {
        let canon = self.canonical();
        match &canon.family {
            Family::Exponential { rate } => ModeSup::Bounded(*rate),
            Family::Uniform { lo, hi } => ModeSup::Bounded(1.0 / (hi - lo)),
            Family::PowerOnUnit { k } => {
                if *k < 1.0 {
                    ModeSup::Unbounded
                } else {
                    ModeSup::Bounded(*k)
                }
            }
            Family::WeibullRate { rate, shape } => {
                if *shape < 1.0 {
                    ModeSup::Unbounded
                } else if *shape == 1.0 {
                    ModeSup::Bounded(*rate)
                } else {
                    let m = ((shape - 1.0) / (rate * shape)).powf(1.0 / shape);
                    ModeSup::Bounded(canon.pdf(m))
                }
            }
            Family::Beta { alpha, beta } => {
                if *alpha < 1.0 || *beta < 1.0 {
                    ModeSup::Unbounded
                } else if *alpha == 1.0 && *beta == 1.0 {
                    ModeSup::Bounded(1.0)
                } else if *alpha == 1.0 {
                    ModeSup::Bounded(*beta)
                } else if *beta == 1.0 {
                    ModeSup::Bounded(*alpha)
                } else {
                    let m = (alpha - 1.0) / (alpha + beta - 2.0);
                    ModeSup::Bounded(canon.pdf(m))
                }
            }
            Family::Lindley { lambda } => {
                let m = if *lambda >= 1.0 { 0.0 } else { (1.0 - lambda) / lambda };
                ModeSup::Bounded(canon.pdf(m))
            }
            Family::LogLogistic { alpha, lambda } => {
                if *alpha < 1.0 {
                    ModeSup::Unbounded
                } else if *alpha == 1.0 {
                    ModeSup::Bounded(1.0 / lambda)
                } else {
                    let m = lambda * ((alpha - 1.0) / (alpha + 1.0)).powf(1.0 / alpha);
                    ModeSup::Bounded(canon.pdf(m))
                }
            }
            Family::Gamma { shape, rate } => {
                if *shape < 1.0 {
                    ModeSup::Unbounded
                } else if *shape == 1.0 {
                    ModeSup::Bounded(*rate)
                } else {
                    ModeSup::Bounded(canon.pdf((shape - 1.0) / rate))
                }
            }
            _ => canon.mode_sup_numeric(),
        }
    }

    /// Grid scan plus golden-section refinement, with growth detection
    /// toward the support endpoints.
    fn mode_sup_numeric(&self) -> ModeSup {
        let (lo, hi) = self.support();
        let a = self.quantile(1e-9).unwrap_or(lo);
        let b = self.quantile(1.0 - 1e-9).unwrap_or(if hi.is_finite() { hi } else { a + 1.0 });
        // Endpoint growth check: densities in this catalog are monotone near
        // the support edges, so a diverging sequence means an unbounded mode.
        for anchor in [lo, hi] {
            if !anchor.is_finite() {
                continue;
            }
            let mut prev = 0.0_f64;
            let mut growing = true;
            for i in 1..=10 {
                let eps = 10f64.powi(-(i as i32 + 2));
                let x = if anchor == lo { lo + eps * (b - a).max(1.0) } else { hi - eps * (b - a).max(1.0) };
                let v = self.pdf(x);
                if v.is_infinite() || v > 1e14 {
                    return ModeSup::Unbounded;
                }
                if i > 1 && v <= prev {
                    growing = false;
                    break;
                }
                prev = v;
            }
            if growing && prev > 1e10 {
                return ModeSup::Unbounded;
            }
        }
        let n = 1024usize;
        let mut best_i: usize = 0;
        let mut best = f64::NEG_INFINITY;
        for i in 0..=n {
            let x = a + (b - a) * i as f64 / n as f64;
            let v = self.pdf(x);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let xl = a + (b - a) * (best_i.saturating_sub(1)) as f64 / n as f64;
        let xr = a + (b - a) * (best_i + 1).min(n) as f64 / n as f64;
        ModeSup::Bounded(golden_max(|x| self.pdf(x), xl, xr, 1e-8))
    }
}

/// Golden-section maximization of a unimodal function on [a, b].
pub(crate) fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol * (1.0 + a.abs().max(b.abs())) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    f(0.5 * (a + b)).max(fc).max(fd)
}

/// A draw from the open interval (0, 1) — never exactly 0 or 1, so the
/// inverse CDF is always defined.
pub(crate) fn open_unit<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
}

/// A base distribution together with a PHR exponent; the derived law has
/// survival function sf_base^gamma and hazard gamma times the base hazard.
#[derive(Debug, Clone, PartialEq)]
pub struct PhrPair {
    pub base: Distribution,
    pub gamma: f64,
}

impl PhrPair {
    pub fn new(base: Distribution, gamma: f64) -> Result<Self> {
        require(gamma.is_finite() && gamma > 0.0, "phr: gamma > 0 required")?;
        Ok(Self { base, gamma })
    }

    /// The derived distribution with sf = sf_base^gamma.
    pub fn derived(&self) -> Distribution {
        Distribution::phr(self.base.clone(), self.gamma).expect("gamma validated")
    }
}

// ---------------------------------------------------------------------------
// Spec-string parsing: family(key=value, ...), nested for phr(base=..., gamma=...)
// ---------------------------------------------------------------------------

/// Parse a distribution spec string such as `exp(rate=2)` or
/// `phr(base=exp(rate=1), gamma=5)`. Whitespace-insensitive; family names are
/// case-insensitive. The grammar is documented in the CLI help.
pub fn parse_spec(input: &str) -> Result<Distribution> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let (dist, rest) = parse_dist(&compact)?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!("trailing input after spec: {rest:?}")));
    }
    Ok(dist)
}

fn parse_dist(s: &str) -> Result<(Distribution, &str)> {
    let open = s
        .find('(')
        .ok_or_else(|| Error::Parse(format!("expected '(' in distribution spec {s:?}")))?;
    let name = s[..open].to_ascii_lowercase();
    let mut rest = &s[open + 1..];
    let mut args: Vec<(String, ArgValue)> = Vec::new();
    if let Some(stripped) = rest.strip_prefix(')') {
        rest = stripped;
    } else {
        loop {
            let eq = rest
                .find('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {rest:?}")))?;
            let key = rest[..eq].to_ascii_lowercase();
            rest = &rest[eq + 1..];
            let value = if rest.starts_with(|c: char| c.is_ascii_alphabetic())
                && rest.contains('(')
                && rest.find('(').unwrap() < rest.find(|c| c == ',' || c == ')').unwrap_or(usize::MAX)
            {
                let (d, r) = parse_dist(rest)?;
                rest = r;
                ArgValue::Dist(d)
            } else {
                let end = rest
                    .find(|c| c == ',' || c == ')')
                    .ok_or_else(|| Error::Parse(format!("unterminated value in {rest:?}")))?;
                let raw = &rest[..end];
                rest = &rest[end..];
                match raw.parse::<f64>() {
                    Ok(num) => ArgValue::Num(num),
                    Err(_) if raw.chars().all(|c| c.is_ascii_alphabetic()) => {
                        ArgValue::Word(raw.to_ascii_lowercase())
                    }
                    Err(_) => return Err(Error::Parse(format!("not a number: {raw:?}"))),
                }
            };
            args.push((key, value));
            if let Some(stripped) = rest.strip_prefix(',') {
                rest = stripped;
            } else if let Some(stripped) = rest.strip_prefix(')') {
                rest = stripped;
                break;
            } else {
                return Err(Error::Parse(format!("expected ',' or ')' in {rest:?}")));
            }
        }
    }
    let dist = build_family(&name, args)?;
    Ok((dist, rest))
}

enum ArgValue {
    Num(f64),
    Word(String),
    Dist(Distribution),
}

fn build_family(name: &str, args: Vec<(String, ArgValue)>) -> Result<Distribution> {
    let mut nums: Vec<(String, f64)> = Vec::new();
    let mut words: Vec<(String, String)> = Vec::new();
    let mut dists: Vec<(String, Distribution)> = Vec::new();
    for (k, v) in args {
        match v {
            ArgValue::Num(n) => nums.push((k, n)),
            ArgValue::Word(w) => words.push((k, w)),
            ArgValue::Dist(d) => dists.push((k, d)),
        }
    }
    let num = |key: &str| -> Result<f64> {
        nums.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Parse(format!("{name}: missing parameter {key:?}")))
    };
    let expect_keys = |keys: &[&str]| -> Result<()> {
        for (k, _) in &nums {
            if !keys.contains(&k.as_str()) {
                return Err(Error::Parse(format!("{name}: unknown parameter {k:?}")));
            }
        }
        Ok(())
    };
    match name {
        "exp" | "exponential" => {
            expect_keys(&["rate"])?;
            Distribution::exponential(num("rate")?)
        }
        "weibull" | "wei" => {
            expect_keys(&["rate", "shape"])?;
            Distribution::weibull_rate(num("rate")?, num("shape")?)
        }
        "lindley" => {
            expect_keys(&["lambda"])?;
            Distribution::lindley(num("lambda")?)
        }
        "uniform" => {
            expect_keys(&["c", "d"])?;
            Distribution::uniform(num("c")?, num("d")?)
        }
        "beta" => {
            expect_keys(&["alpha", "beta"])?;
            Distribution::beta(num("alpha")?, num("beta")?)
        }
        "power" => {
            expect_keys(&["k"])?;
            Distribution::power_on_unit(num("k")?)
        }
        "loglogistic" | "ll" => {
            expect_keys(&["alpha", "lambda"])?;
            Distribution::log_logistic(num("alpha")?, num("lambda")?)
        }
        "apll" => {
            expect_keys(&["alpha", "lambda", "a"])?;
            Distribution::apll(num("alpha")?, num("lambda")?, num("a")?)
        }
        "exll" => {
            expect_keys(&["alpha", "lambda", "a"])?;
            Distribution::exll(num("alpha")?, num("lambda")?, num("a")?)
        }
        "gee" => {
            expect_keys(&["lambda", "alpha", "theta"])?;
            Distribution::gee(num("lambda")?, num("alpha")?, num("theta")?)
        }
        "eeg" => {
            expect_keys(&["alpha", "theta", "p"])?;
            Distribution::eeg(num("alpha")?, num("theta")?, num("p")?)
        }
        "gamma" => {
            expect_keys(&["shape", "rate"])?;
            Distribution::gamma(num("shape")?, num("rate")?)
        }
        "piecewise" => {
            let fixture = words
                .iter()
                .find(|(k, _)| k == "fixture")
                .map(|(_, v)| v.as_str());
            match fixture {
                Some("a") => Ok(Distribution::piecewise_fixture_a()),
                Some("b") => Ok(Distribution::piecewise_fixture_b()),
                _ => Err(Error::Parse(
                    "piecewise: fixture=a (cdf x²/2, (x²+2)/6) or fixture=b (cdf (x²+x)/4, x/2) required".into(),
                )),
            }
        }
        "phr" => {
            let base = dists
                .into_iter()
                .find(|(k, _)| k == "base")
                .map(|(_, d)| d)
                .ok_or_else(|| Error::Parse("phr: missing base=<dist>".into()))?;
            expect_keys(&["gamma"])?;
            Distribution::phr(base, num("gamma")?)
        }
        other => Err(Error::Parse(format!("unknown family {other:?}"))),
    }
}

impl std::fmt::Display for Distribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.family {
            Family::Exponential { rate } => write!(f, "exp(rate={rate})"),
            Family::WeibullRate { rate, shape } => write!(f, "weibull(rate={rate},shape={shape})"),
            Family::Lindley { lambda } => write!(f, "lindley(lambda={lambda})"),
            Family::Uniform { lo, hi } => write!(f, "uniform(c={lo},d={hi})"),
            Family::Beta { alpha, beta } => write!(f, "beta(alpha={alpha},beta={beta})"),
            Family::PowerOnUnit { k } => write!(f, "power(k={k})"),
            Family::LogLogistic { alpha, lambda } => write!(f, "ll(alpha={alpha},lambda={lambda})"),
            Family::Apll { alpha, lambda, a } => write!(f, "apll(alpha={alpha},lambda={lambda},a={a})"),
            Family::Exll { alpha, lambda, a } => write!(f, "exll(alpha={alpha},lambda={lambda},a={a})"),
            Family::Gee { lambda, alpha, theta } => write!(f, "gee(lambda={lambda},alpha={alpha},theta={theta})"),
            Family::Eeg { alpha, theta, p } => write!(f, "eeg(alpha={alpha},theta={theta},p={p})"),
            Family::Gamma { shape, rate } => write!(f, "gamma(shape={shape},rate={rate})"),
            Family::PiecewisePoly { segments } => {
                if *self == Distribution::piecewise_fixture_a() {
                    write!(f, "piecewise(fixture=a)")
                } else if *self == Distribution::piecewise_fixture_b() {
                    write!(f, "piecewise(fixture=b)")
                } else {
                    write!(f, "piecewise(segments={})", segments.len())
                }
            }
            Family::Phr { base, gamma } => write!(f, "phr(base={base},gamma={gamma})"),
        }
    }
}
