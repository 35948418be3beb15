//! Weighted residual extropy-inaccuracy measures for lifetime distributions.
//!
//! The crate evaluates extropy-based information measures — the weighted
//! inaccuracy WJI, its residual form WRJI, the discrimination gap WRDJ, and
//! their relatives — in closed form where a formula is registered and by
//! adaptive quadrature everywhere else, over a catalog of lifetime
//! distributions including proportional-hazard-rate (PHR) derived laws.
//! It also estimates WRJI non-parametrically from two samples with
//! cross-validated kernel bandwidths, runs seeded Monte Carlo bias/MSE
//! studies of those estimators, and fits candidate lifetime families to real
//! data by maximum likelihood with Kolmogorov-Smirnov goodness of fit.
//!
//! ```
//! use wrji::distributions::Distribution;
//! use wrji::measures;
//!
//! let x = Distribution::exponential(1.0)?;
//! let y = Distribution::exponential(2.0)?;
//! // Weighted inaccuracy between exp(1) and exp(2): -θλ/(2(θ+λ)²) = -1/9.
//! let v = measures::wji(&x, &y)?;
//! assert!((v.value - (-1.0 / 9.0)).abs() < 1e-10);
//! # Ok::<(), wrji::Error>(())
//! ```

pub mod distributions;
pub mod error;
pub mod estimators;
pub mod fitting;
pub mod measures;
pub mod quadrature;
pub mod simulation;
pub(crate) mod special;

pub use error::{Error, Result};

// The book chapters double as doctests: every ```rust snippet in book/src is
// compiled and run by `cargo test --doc`, keeping the guide in sync with the
// library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(distributions, "../../../book/src/distributions.md");
    chapter!(measures, "../../../book/src/measures.md");
    chapter!(phr, "../../../book/src/phr.md");
    chapter!(bounds, "../../../book/src/bounds.md");
    chapter!(estimation, "../../../book/src/estimation.md");
    chapter!(simulation, "../../../book/src/simulation.md");
    chapter!(fitting, "../../../book/src/fitting.md");
}
