//! Acceptance suite: one test per numbered criterion, each asserting its
//! stated tolerances and printing a pass/fail line (visible with
//! `--nocapture`; the test name carries the criterion number either way).
//!
//! Run with `cargo test -p wrji --test acceptance`. Criterion 5 runs the
//! full 10^4-replication benchmark study and takes tens of minutes.

use wrji::distributions::Distribution;
use wrji::estimators::{EstimatorConfig, Sample, SfEstimator, WrjiEstimator};
use wrji::fitting::{self, DatasetRef, FitFamily};
use wrji::measures::{self, BoundStatus};
use wrji::simulation::{self, McConfig};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exp(rate: f64) -> Distribution {
    Distribution::exponential(rate).unwrap()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!("[{criterion}] {} — {detail}", if pass { "PASS" } else { "FAIL" });
}

// ---------------------------------------------------------------------------
// 1. Closed-form exactness at published values, to 1e-10
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_closed_form_exactness() {
    let thetas = [0.5, 1.0, 2.0];
    let ts = [0.0, 0.5, 1.0];
    let tol = 1e-10;
    let mut checks = 0usize;
    for &theta in &thetas {
        // Whole-line inaccuracy values.
        assert!((measures::wji(&exp(theta), &exp(2.0 * theta)).unwrap().value + 1.0 / 9.0).abs() < tol);
        assert!((measures::wji(&exp(theta), &exp(5.0 * theta)).unwrap().value + 5.0 / 72.0).abs() < tol);
        assert!((measures::wji(&exp(theta), &exp(theta)).unwrap().value + 0.125).abs() < tol);
        checks += 3;
        for &t in &ts {
            // Residual self-inaccuracies at rates θ, 2θ, 5θ.
            for (mult, formula) in [
                (1.0, -(2.0 * t * theta + 1.0) / 8.0),
                (2.0, -(4.0 * t * theta + 1.0) / 8.0),
                (5.0, -(10.0 * t * theta + 1.0) / 8.0),
            ] {
                let v = measures::weighted_residual_extropy(&exp(mult * theta), t).unwrap().value;
                assert!((v - formula).abs() < tol, "rate {mult}θ at θ={theta}, t={t}");
                checks += 1;
            }
            // Residual pair formulas.
            let v = measures::wrji(&exp(2.0 * theta), &exp(5.0 * theta), t).unwrap().value;
            assert!((v + (35.0 * t * theta + 5.0) / 49.0).abs() < tol);
            let v = measures::wrji(&exp(theta), &exp(5.0 * theta), t).unwrap().value;
            assert!((v + (30.0 * t * theta + 5.0) / 72.0).abs() < tol);
            checks += 2;
        }
    }
    report("criterion 1", true, &format!("{checks} closed-form values exact to 1e-10"));
}

// ---------------------------------------------------------------------------
// 2. Registered closed forms vs adaptive quadrature over a parameter grid
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_oracle_agreement() {
    let mut cells = 0usize;
    let mut worst: f64 = 0.0;
    let mut check = |x: &Distribution, y: &Distribution, t: f64| {
        let closed = measures::wrji(x, y, t).unwrap();
        assert_eq!(closed.route, measures::Route::ClosedForm, "{x} vs {y} should be registered");
        let quad = measures::wrji_quadrature(x, y, t).unwrap();
        let diff = (closed.value - quad.value).abs();
        let scale = 1.0f64.max(closed.value.abs());
        assert!(diff / scale < 1e-6, "{x} vs {y} at t={t}: closed {} quad {}", closed.value, quad.value);
        worst = worst.max(diff / scale);
        cells += 1;
    };
    // Exponential pairs.
    for theta in [0.5, 1.0, 2.0] {
        for lam in [0.3, 1.0, 2.5, 5.0] {
            for t in [0.0, 0.25, 1.0, 2.0] {
                check(&exp(theta), &exp(lam), t);
            }
        }
    }
    // Same-shape Weibull pairs (shape 2).
    for theta in [0.5, 1.0, 2.0] {
        for lam in [1.0, 2.0] {
            for t in [0.0, 0.5, 1.0] {
                let x = Distribution::weibull_rate(theta, 2.0).unwrap();
                let y = Distribution::weibull_rate(lam, 2.0).unwrap();
                check(&x, &y, t);
            }
        }
    }
    // Uniform base under a PHR exponent.
    for gamma in [0.5, 1.0, 2.0, 5.0] {
        for d in [1.0, 2.0] {
            for frac in [0.0, 0.3, 0.8] {
                let u = Distribution::uniform(0.0, d).unwrap();
                let y = Distribution::phr(u.clone(), gamma).unwrap();
                check(&u, &y, frac * d);
            }
        }
    }
    // k-component series systems on an exponential base.
    for k in [2.0, 3.0, 5.0] {
        for theta in [0.5, 1.0] {
            for t in [0.0, 0.5, 1.0] {
                let base = exp(theta);
                let sys = Distribution::phr(base.clone(), k).unwrap();
                check(&base, &sys, t);
            }
        }
    }
    // Exponential against Lindley, and Lindley self-pairs (the printed
    // rational formulas validate against quadrature, so they are shipped).
    for theta in [0.5, 1.0, 2.0] {
        for lam in [0.5, 1.0, 2.0] {
            for t in [0.0, 0.5, 1.0] {
                check(&exp(theta), &Distribution::lindley(lam).unwrap(), t);
            }
        }
    }
    for lam in [0.5, 1.0, 2.0] {
        for t in [0.0, 0.5, 1.0] {
            let l = Distribution::lindley(lam).unwrap();
            check(&l, &l.clone(), t);
        }
    }
    // Power-function pairs on the unit interval.
    for (j, k) in [(1.0, 2.0), (2.0, 3.0), (1.0, 3.0), (2.0, 2.0)] {
        for t in [0.0, 0.25, 0.5] {
            let x = Distribution::power_on_unit(j).unwrap();
            let y = Distribution::power_on_unit(k).unwrap();
            check(&x, &y, t);
        }
    }
    assert!(cells >= 100, "need at least 100 grid cells, ran {cells}");
    report("criterion 2", true, &format!("{cells} cells, worst closed-vs-quadrature gap {worst:.2e}"));
}

// ---------------------------------------------------------------------------
// 3. Identity suite to 1e-8 over 5 pairs x 20 time points
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_identity_suite() {
    let pairs: Vec<(Distribution, Distribution, f64)> = vec![
        // (X, Y, upper end of the t-grid)
        (exp(1.0), exp(2.0), 2.0),
        (exp(1.0), Distribution::lindley(1.0).unwrap(), 2.0),
        (
            Distribution::weibull_rate(1.0, 2.0).unwrap(),
            Distribution::weibull_rate(2.0, 2.0).unwrap(),
            1.5,
        ),
        (Distribution::power_on_unit(2.0).unwrap(), Distribution::uniform(0.0, 1.0).unwrap(), 0.93),
        (Distribution::gamma(2.0, 1.0).unwrap(), exp(2.0), 2.0),
    ];
    let tol = 1e-8;
    let mut count = 0usize;
    for (x, y, t_hi) in &pairs {
        for i in 0..20 {
            let t = t_hi * (i as f64 + 0.5) / 20.0;
            let wrji = measures::wrji(x, y, t).unwrap().value;
            // Decomposition: wrji = weighted residual extropy + wrdj, with
            // wrdj checked against its own integral definition.
            let wre = measures::weighted_residual_extropy(x, t).unwrap().value;
            let wrdj = measures::wrdj(x, y, t).unwrap().value;
            assert!((wrji - (wre + wrdj)).abs() < tol, "decomposition at {x}/{y} t={t}");
            let (sx, sy) = (x.sf(t), y.sf(t));
            let direct = 0.5
                * wrji::quadrature::integrate(
                    |v| v * (x.pdf(v) / sx) * (x.pdf(v) / sx - y.pdf(v) / sy),
                    t,
                    wrji::quadrature::truncate_upper(x, 1e-13).min(
                        x.support().1.min(y.support().1),
                    ),
                    1e-11,
                )
                .unwrap()
                .value;
            assert!((wrdj - direct).abs() < tol, "direct wrdj at {x}/{y} t={t}: {wrdj} vs {direct}");
            // Window-shift relation wrji = a(t)[wji + c(t)].
            let rc = measures::wrji_relation_constants(x, y, t).unwrap();
            let wji = measures::wji(x, y).unwrap().value;
            assert!((wrji - rc.a * (wji + rc.c)).abs() < tol, "a/c relation at {x}/{y} t={t}");
            // Three-measure split.
            let past = measures::past_wji(x, y, t).unwrap().value;
            let split = x.cdf(t) * y.cdf(t) * past + sx * sy * wrji;
            assert!((wji - split).abs() < tol, "three-measure split at {x}/{y} t={t}");
            count += 4;
        }
    }
    // Monotone-transform theorem, both routes: the transform-side integral
    // against direct evaluation on the mapped law. Scale maps land back in
    // the catalog (exp and Weibull rates rescale), as do power maps of
    // power-function laws.
    let scale_routes = [
        (exp(1.0), 2.0, Distribution::exponential(0.5).unwrap()),
        (exp(2.0), 0.5, Distribution::exponential(4.0).unwrap()),
        (
            Distribution::weibull_rate(1.0, 2.0).unwrap(),
            2.0,
            Distribution::weibull_rate(0.25, 2.0).unwrap(),
        ),
    ];
    for (x, c, mapped) in scale_routes {
        let via = measures::wji_of_transform(&x, |v| c * v, |_| c).unwrap().value;
        let direct = measures::weighted_extropy(&mapped).unwrap().value;
        assert!((via - direct).abs() < 1e-8, "scale transform: {via} vs {direct}");
        count += 1;
    }
    let square_routes = [
        (Distribution::uniform(0.0, 1.0).unwrap(), Distribution::power_on_unit(0.5).unwrap()),
        (Distribution::power_on_unit(2.0).unwrap(), Distribution::power_on_unit(1.0).unwrap()),
    ];
    for (x, mapped) in square_routes {
        let via = measures::wji_of_transform(&x, |v| v * v, |v| 2.0 * v).unwrap().value;
        let direct = measures::weighted_extropy(&mapped).unwrap().value;
        assert!((via - direct).abs() < 1e-8, "square transform: {via} vs {direct}");
        count += 1;
    }
    report("criterion 3", true, &format!("{count} identity checks at 1e-8"));
}

// ---------------------------------------------------------------------------
// 4. Bound suite on a randomized grid: zero violations
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_bound_suite_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_813);
    let mut configs = 0usize;
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    while configs < 200 {
        let (x, y): (Distribution, Distribution) = match configs % 8 {
            0 => {
                let a = rng.random_range(0.4..3.0);
                let b = rng.random_range(0.4..6.0);
                (exp(a), exp(b))
            }
            1 => {
                let a = rng.random_range(0.5..2.0);
                let b = rng.random_range(0.5..2.0);
                (
                    Distribution::weibull_rate(a, 2.0).unwrap(),
                    Distribution::weibull_rate(b, 2.0).unwrap(),
                )
            }
            2 => {
                let d = rng.random_range(0.8..3.0);
                let g = rng.random_range(0.3..4.0);
                let u = Distribution::uniform(0.0, d).unwrap();
                (u.clone(), Distribution::phr(u, g).unwrap())
            }
            3 => {
                let theta = rng.random_range(0.5..2.5);
                let g = rng.random_range(0.3..5.0);
                let base = exp(theta);
                (base.clone(), Distribution::phr(base, g).unwrap())
            }
            4 => {
                let lam = rng.random_range(0.5..2.5);
                let g = rng.random_range(0.5..3.0);
                let base = Distribution::lindley(lam).unwrap();
                (base.clone(), Distribution::phr(base, g).unwrap())
            }
            5 => {
                let j = rng.random_range(1.0..3.5);
                let k = rng.random_range(1.0..3.5);
                (
                    Distribution::power_on_unit(j).unwrap(),
                    Distribution::power_on_unit(k).unwrap(),
                )
            }
            6 => (Distribution::gamma(2.0, rng.random_range(0.5..2.0)).unwrap(), exp(rng.random_range(0.5..3.0))),
            _ => (
                Distribution::beta(rng.random_range(1.0..5.0), rng.random_range(1.0..5.0)).unwrap(),
                Distribution::beta(rng.random_range(1.0..5.0), rng.random_range(1.0..5.0)).unwrap(),
            ),
        };
        let u = rng.random_range(0.02..0.7);
        let t = x.quantile(u).unwrap();
        if y.sf(t) < 1e-8 || x.sf(t) < 1e-8 {
            continue;
        }
        let rep = measures::bound_suite(&x, &y, t)
            .unwrap_or_else(|e| panic!("bound suite failed for {x}/{y} at t={t}: {e}"));
        let violations = rep.violations();
        assert!(
            violations.is_empty(),
            "bound violations for {x} vs {y} at t={t} (wrji {}): {violations:?}",
            rep.wrji
        );
        for e in &rep.entries {
            match e.status {
                BoundStatus::Skipped { .. } => skipped += 1,
                _ => evaluated += 1,
            }
        }
        configs += 1;
    }
    report(
        "criterion 4",
        true,
        &format!("200 configurations, {evaluated} bounds evaluated ({skipped} inapplicable skipped), zero violations"),
    );
}

// ---------------------------------------------------------------------------
// 5. Benchmark-table reproduction at R = 10000 (quantitative + orderings)
// ---------------------------------------------------------------------------

// Published benchmark values: [t][n][assigned-law] -> (bias_n, bias_h, mse_n, mse_h).
type Cell = (f64, f64, f64, f64);
const TABLE1_EXP: [[[Cell; 3]; 2]; 3] = [
    // t = 0.01: n = 30, then n = 50; columns λ = 2, 5, 7.
    [
        [(0.0513, 0.0404, 0.0027, 0.0018), (0.0551, 0.0518, 0.0035, 0.0027), (0.0456, 0.0432, 0.0021, 0.0019)],
        [(0.0490, 0.0386, 0.0025, 0.0016), (0.0543, 0.0512, 0.0030, 0.0026), (0.0452, 0.0431, 0.0021, 0.0019)],
    ],
    // t = 0.05
    [
        [(0.0561, 0.0456, 0.0033, 0.0023), (0.0671, 0.0637, 0.0045, 0.0041), (0.0588, 0.0562, 0.0035, 0.0032)],
        [(0.0537, 0.0439, 0.0030, 0.0021), (0.0665, 0.0634, 0.0044, 0.0040), (0.0581, 0.0557, 0.0034, 0.0031)],
    ],
    // t = 0.10
    [
        [(0.0618, 0.0512, 0.0047, 0.0029), (0.0820, 0.0787, 0.0068, 0.0062), (0.0744, 0.0716, 0.0056, 0.0052)],
        [(0.0586, 0.0499, 0.0036, 0.0027), (0.0808, 0.0777, 0.0065, 0.0061), (0.0739, 0.0714, 0.0055, 0.0051)],
    ],
];
const TABLE1_BETA: [[[Cell; 3]; 2]; 3] = [
    // t = 0.01; columns beta(1,4), beta(5,3), beta(6,6).
    // The (6,6)/n=30 MSE prints as 0.0824 in the source, duplicating its
    // bias cell; it is excluded from the relative-MSE clause below.
    [
        [(0.0342, 0.0170, 0.0012, 0.0004), (0.1028, 0.0510, 0.0111, 0.0035), (0.0824, 0.0410, 0.0824, 0.0023)],
        [(0.0326, 0.0170, 0.0011, 0.0004), (0.0963, 0.0491, 0.0097, 0.0031), (0.0773, 0.0397, 0.0063, 0.0020)],
    ],
    // t = 0.10
    [
        [(0.0455, 0.0244, 0.0022, 0.0008), (0.1024, 0.0537, 0.0112, 0.0040), (0.0824, 0.0447, 0.0073, 0.0027)],
        [(0.0426, 0.0230, 0.0019, 0.0007), (0.0946, 0.0512, 0.0095, 0.0034), (0.0771, 0.0426, 0.0063, 0.0023)],
    ],
    // t = 0.30
    [
        [(0.0802, 0.0571, 0.0072, 0.0039), (0.1156, 0.0831, 0.0149, 0.0082), (0.0955, 0.0679, 0.0101, 0.0055)],
        [(0.0726, 0.0517, 0.0058, 0.0031), (0.1054, 0.0756, 0.0123, 0.0067), (0.0880, 0.0633, 0.0084, 0.0046)],
    ],
];

const TABLE1_REPLICATIONS: usize = 10_000;

/// The full benchmark study, run once and shared by the two criterion-5
/// tests below (quantitative reproduction and qualitative orderings).
fn table1_study() -> &'static Table1Study {
    use std::sync::OnceLock;
    static STUDY: OnceLock<Table1Study> = OnceLock::new();
    STUDY.get_or_init(|| {
        let exp_cfgs = simulation::table1_exponential_configs(TABLE1_REPLICATIONS, 46_000);
        let beta_cfgs = simulation::table1_beta_configs(TABLE1_REPLICATIONS, 46_100);
        let run = |cfgs: &[McConfig]| -> Vec<simulation::SimulationReport> {
            cfgs.iter().map(|c| simulation::run_mc(c).unwrap()).collect()
        };
        let study = Table1Study {
            exp_configs: exp_cfgs.clone(),
            exp_reports: run(&exp_cfgs),
            beta_configs: beta_cfgs.clone(),
            beta_reports: run(&beta_cfgs),
        };
        println!("law,t,n,bias_n,published_bias_n,bias_h,published_bias_h,mse_n,published_mse_n,mse_h,published_mse_h");
        study.for_each_cell(&mut |row| {
            println!(
                "{},{},{},{:.4},{},{:.4},{},{:.4},{},{:.4},{}",
                row.law, row.t, row.n, row.bias_n, row.pub_bias_n, row.bias_h, row.pub_bias_h,
                row.mse_n, row.pub_mse_n, row.mse_h, row.pub_mse_h
            );
        });
        study
    })
}

struct Table1Study {
    exp_configs: Vec<McConfig>,
    exp_reports: Vec<simulation::SimulationReport>,
    beta_configs: Vec<McConfig>,
    beta_reports: Vec<simulation::SimulationReport>,
}

struct CellRow {
    law: String,
    t: f64,
    n: usize,
    bias_n: f64,
    bias_h: f64,
    mse_n: f64,
    mse_h: f64,
    pub_bias_n: f64,
    pub_bias_h: f64,
    pub_mse_n: f64,
    pub_mse_h: f64,
    /// Set on the one source-table cell whose printed MSE duplicates its
    /// bias value (a typo); excluded from the relative-MSE clause.
    mse_typo: bool,
}

impl Table1Study {
    fn for_each_cell(&self, f: &mut dyn FnMut(CellRow)) {
        let blocks: [(&[McConfig], &[simulation::SimulationReport], &[[[Cell; 3]; 2]; 3]); 2] = [
            (&self.exp_configs, &self.exp_reports, &TABLE1_EXP),
            (&self.beta_configs, &self.beta_reports, &TABLE1_BETA),
        ];
        for (bi, (configs, reports, table)) in blocks.into_iter().enumerate() {
            for (li, r) in reports.iter().enumerate() {
                let cfg = &configs[li];
                for (ti, &t) in cfg.t_grid.iter().enumerate() {
                    for (ni, &n) in cfg.n_grid.iter().enumerate() {
                        let ec = r.cell(t, n, "ecdf").unwrap();
                        let ke = r.cell(t, n, "kernel").unwrap();
                        let (pb_n, pb_h, pm_n, pm_h) = table[ti][ni][li];
                        f(CellRow {
                            law: r.y_spec.clone(),
                            t,
                            n,
                            bias_n: ec.bias,
                            bias_h: ke.bias,
                            mse_n: ec.mse,
                            mse_h: ke.mse,
                            pub_bias_n: pb_n,
                            pub_bias_h: pb_h,
                            pub_mse_n: pm_n,
                            pub_mse_h: pm_h,
                            mse_typo: bi == 1 && li == 2 && ti == 0 && ni == 0,
                        });
                    }
                }
            }
        }
    }
}

#[test]
fn criterion_5_table1_reproduction() {
    let study = table1_study();
    let (mut bias_ok, mut bias_total, mut worst_gap) = (0usize, 0usize, 0.0f64);
    let (mut mse_ok, mut mse_total) = (0usize, 0usize);
    study.for_each_cell(&mut |row| {
        for (ours, published) in [(row.bias_n, row.pub_bias_n), (row.bias_h, row.pub_bias_h)] {
            bias_total += 1;
            let gap = (ours - published).abs();
            worst_gap = worst_gap.max(gap);
            if gap <= 0.01 {
                bias_ok += 1;
            }
        }
        for (i, (ours, published)) in
            [(row.mse_n, row.pub_mse_n), (row.mse_h, row.pub_mse_h)].into_iter().enumerate()
        {
            if i == 0 && row.mse_typo {
                continue; // source-table cell duplicates its bias value
            }
            mse_total += 1;
            if (ours - published).abs() / published <= 0.40 {
                mse_ok += 1;
            }
        }
    });
    let bias_pass = bias_ok == bias_total;
    let mse_pass = mse_ok == mse_total;
    report(
        "criterion 5 (bias ±0.01)",
        bias_pass,
        &format!("{bias_ok}/{bias_total} cells, worst gap {worst_gap:.4}"),
    );
    report("criterion 5 (MSE ±40%)", mse_pass, &format!("{mse_ok}/{mse_total} cells"));
    assert!(
        bias_pass && mse_pass,
        "benchmark-table reproduction failed: bias {bias_ok}/{bias_total} cells within ±0.01 \
         (worst gap {worst_gap:.4}), MSE {mse_ok}/{mse_total} cells within ±40%. The \
         cross-validated estimator is substantially less biased than the published table in \
         every cell; the published values are not reproducible from the disclosed procedure. \
         See the per-cell comparison printed above and the repository README."
    );
}

#[test]
fn criterion_5_table1_orderings() {
    let study = table1_study();
    let (mut kernel_ok, mut kernel_total) = (0usize, 0usize);
    study.for_each_cell(&mut |row| {
        kernel_total += 1;
        if row.mse_h <= row.mse_n {
            kernel_ok += 1;
        }
    });
    // MSE decreasing from the smaller n to the larger, per mode and cell.
    let (mut n_ok, mut n_total) = (0usize, 0usize);
    for (configs, reports) in [
        (&study.exp_configs, &study.exp_reports),
        (&study.beta_configs, &study.beta_reports),
    ] {
        for (li, r) in reports.iter().enumerate() {
            let cfg = &configs[li];
            for &t in &cfg.t_grid {
                for mode in ["ecdf", "kernel"] {
                    let small = r.cell(t, cfg.n_grid[0], mode).unwrap().mse;
                    let large = r.cell(t, cfg.n_grid[1], mode).unwrap().mse;
                    n_total += 1;
                    if large <= small {
                        n_ok += 1;
                    }
                }
            }
        }
    }
    let kernel_pass = kernel_ok == kernel_total;
    let n_pass = n_ok == n_total;
    report(
        "criterion 5 (MSE kernel <= ecdf)",
        kernel_pass,
        &format!("{kernel_ok}/{kernel_total} cells"),
    );
    report(
        "criterion 5 (MSE decreasing in n)",
        n_pass,
        &format!("{n_ok}/{n_total} cells"),
    );
    assert!(
        kernel_pass && n_pass,
        "ordering claims: kernel<=ecdf in {kernel_ok}/{kernel_total} cells, decreasing-in-n \
         in {n_ok}/{n_total} cells. The kernel-normalized estimator loses at small t because \
         the smoothed survival normalizer leaks mass below the support edge, a boundary \
         effect; see the per-cell table printed above."
    );
}

// ---------------------------------------------------------------------------
// 6. Real-data fits: parameter estimates, K-S statistics and p-values
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_real_data_reproduction() {
    let bladder = DatasetRef::BladderCancer128.values();
    let guinea = DatasetRef::GuineaPigs72.values();
    // (family, data, published params, rel tol, published K-S, published p)
    let cases: Vec<(FitFamily, &[f64], Vec<f64>, f64, f64, f64)> = vec![
        (FitFamily::Ll, &bladder, vec![1.7251, 6.0898], 0.01, 0.0399, 0.9870),
        (FitFamily::Apll, &bladder, vec![1.7118, 4.9174, 2.0976], 0.01, 0.0400, 0.9866),
        (FitFamily::Exll, &bladder, vec![1.4276, 20.0321, 2.0701], 0.01, 0.0351, 0.9975),
        (FitFamily::Wei, &guinea, vec![1.7962, 0.2934], 0.01, 0.0982, 0.4902),
        (FitFamily::Gee, &guinea, vec![1.2899, 3.4676, 0.9118], 0.01, 0.0870, 0.6458),
        (FitFamily::Eeg, &guinea, vec![3.5144, 1.1081, 0.0343], 0.05, 0.0883, 0.6284),
    ];
    for (family, data, published, rel, ks, pv) in cases {
        let fit = fitting::mle(family, data, &[]).unwrap();
        assert!(fit.converged, "{} did not converge", family.name());
        for (i, (got, want)) in fit.params.iter().zip(&published).enumerate() {
            assert!(
                (got - want).abs() / want <= rel,
                "{} parameter {i}: {got} vs published {want} (tol {rel})",
                family.name()
            );
        }
        assert!(
            (fit.ks_statistic - ks).abs() <= 0.005,
            "{} K-S {} vs published {ks}",
            family.name(),
            fit.ks_statistic
        );
        assert!(
            (fit.ks_pvalue - pv).abs() <= 0.01,
            "{} p-value {} vs published {pv}",
            family.name(),
            fit.ks_pvalue
        );
        assert!(fit.ks_pvalue > 0.05, "{} should pass goodness of fit at 5%", family.name());
        println!(
            "  {}: params {:?}, K-S {:.4}, p {:.4}",
            family.name(),
            fit.params,
            fit.ks_statistic,
            fit.ks_pvalue
        );
    }
    report("criterion 6", true, "six fits match published estimates, K-S and p-values");
}

// ---------------------------------------------------------------------------
// 7. Figure-level qualitative claims
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_figure_claims() {
    // (a) With the log-logistic fit as the actual bladder-cancer law, the
    // alpha-power candidate is closer (smaller |WRJI|) than the extended
    // one at a majority of grid points on [0, 10].
    let bladder = DatasetRef::BladderCancer128.values();
    let ll = fitting::mle(FitFamily::Ll, &bladder, &[]).unwrap().distribution();
    let apll = fitting::mle(FitFamily::Apll, &bladder, &[]).unwrap().distribution();
    let exll = fitting::mle(FitFamily::Exll, &bladder, &[]).unwrap().distribution();
    let mut closer = 0usize;
    let mut total = 0usize;
    for i in 0..=20 {
        let t = 10.0 * i as f64 / 20.0;
        let a = measures::wrji(&ll, &apll, t).unwrap().value.abs();
        let b = measures::wrji(&ll, &exll, t).unwrap().value.abs();
        total += 1;
        if a < b {
            closer += 1;
        }
    }
    assert!(2 * closer > total, "APLL closer at only {closer}/{total} grid points");

    // (b) On the guinea-pig data with the GEE fit as actual law, the
    // kernel-normalized self-estimate tracks the Weibull parametric curve
    // more closely (mean absolute deviation) than the EEG one.
    let guinea = DatasetRef::GuineaPigs72.values();
    let gee = fitting::mle(FitFamily::Gee, &guinea, &[]).unwrap().distribution();
    let wei = fitting::mle(FitFamily::Wei, &guinea, &[]).unwrap().distribution();
    let eeg = fitting::mle(FitFamily::Eeg, &guinea, &[]).unwrap().distribution();
    let grid: Vec<f64> = (0..=10).map(|i| 0.2 * i as f64).collect();
    let cmp = fitting::wrji_model_comparison(
        &guinea,
        "gee",
        &gee,
        &[("wei".into(), wei.clone()), ("eeg".into(), eeg.clone())],
        &grid,
        4242,
    )
    .unwrap();
    let mut mad_wei = 0.0;
    let mut mad_eeg = 0.0;
    let mut m = 0usize;
    for (i, jwh) in cmp.jwh_self.iter().enumerate() {
        if let Some(v) = jwh {
            mad_wei += (v - cmp.candidates[0].jw[i]).abs();
            mad_eeg += (v - cmp.candidates[1].jw[i]).abs();
            m += 1;
        }
    }
    assert!(m >= 8, "too few usable grid points");
    assert!(
        mad_wei < mad_eeg,
        "self-estimate should track the Weibull curve: MAD {mad_wei:.4} vs {mad_eeg:.4}"
    );

    // (c) Exponential-against-Lindley curves are decreasing in t, as are
    // both residual self-curves.
    for (theta, lam) in [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (0.5, 1.5)] {
        let x = exp(theta);
        let y = Distribution::lindley(lam).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=12 {
            let t = 0.25 * i as f64;
            let v = measures::wrji(&x, &y, t).unwrap().value;
            assert!(v < prev + 1e-12, "pair curve not decreasing at t={t} (θ={theta}, λ={lam})");
            prev = v;
        }
        for d in [x, y] {
            let mut prev = f64::INFINITY;
            for i in 0..=12 {
                let t = 0.25 * i as f64;
                let v = measures::weighted_residual_extropy(&d, t).unwrap().value;
                assert!(v < prev + 1e-12, "{d} self-curve not decreasing at t={t}");
                prev = v;
            }
        }
    }
    report(
        "criterion 7",
        true,
        &format!("APLL closer at {closer}/{total} points; MAD {mad_wei:.4} (wei) < {mad_eeg:.4} (eeg); all curves decreasing"),
    );
}

// ---------------------------------------------------------------------------
// 8. Estimator consistency trend across sample sizes
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_estimator_consistency() {
    let x = exp(1.0);
    let y = exp(2.0);
    let t = 0.01;
    let truth = measures::wrji(&x, &y, t).unwrap().value;
    let sizes = [100usize, 400, 1600];
    let reps = 50usize;
    let mut errors_n: Vec<Vec<f64>> = vec![Vec::new(); sizes.len()];
    let mut errors_h: Vec<Vec<f64>> = vec![Vec::new(); sizes.len()];
    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(90_000 + rep as u64);
        let draws_x = x.sample_with(&mut rng, sizes[sizes.len() - 1]);
        let draws_y = y.sample_with(&mut rng, sizes[sizes.len() - 1]);
        for (si, &n) in sizes.iter().enumerate() {
            let sx = Sample::new(draws_x[..n].to_vec()).unwrap();
            let sy = Sample::new(draws_y[..n].to_vec()).unwrap();
            let est = WrjiEstimator::new(sx, sy, &EstimatorConfig::default()).unwrap();
            errors_n[si].push((est.estimate(t, SfEstimator::Ecdf).unwrap() - truth).abs());
            errors_h[si].push((est.estimate(t, SfEstimator::Kernel).unwrap() - truth).abs());
        }
    }
    let median = |v: &mut Vec<f64>| {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v[v.len() / 2]
    };
    for (name, errs) in [("ecdf", &mut errors_n), ("kernel", &mut errors_h)] {
        let meds: Vec<f64> = errs.iter_mut().map(median).collect();
        println!("  {name}: median |error| = {meds:?} for n = {sizes:?}");
        for w in meds.windows(2) {
            assert!(
                w[1] <= w[0] + 1e-12,
                "{name} median error not nonincreasing: {meds:?}"
            );
        }
    }
    report("criterion 8", true, "median absolute error nonincreasing over n = 100, 400, 1600");
}

// ---------------------------------------------------------------------------
// 9. Known-discrepancy ledger: oracle values where printed ones disagree
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_known_discrepancy_ledger() {
    // (a) Power-law triple on the unit interval: the oracle gives
    // -1/2 ∫ x·1·3x² dx = -3/8 for the (uniform, cubic-cdf) pair; the source
    // example prints -0.5 for it. Both routes agree on -3/8.
    let u = Distribution::uniform(0.0, 1.0).unwrap();
    let p3 = Distribution::power_on_unit(3.0).unwrap();
    let closed = measures::wji(&u, &p3).unwrap().value;
    let quad = measures::wrji_quadrature(&u, &p3, 0.0).unwrap().value;
    assert!((closed + 3.0 / 8.0).abs() < 1e-10);
    assert!((quad + 3.0 / 8.0).abs() < 1e-7);
    let printed = -0.5;
    assert!((closed - printed).abs() > 0.1, "documented discrepancy vanished");

    // (b) Piecewise fixtures: direct integration of the stated cdfs gives
    // -43/144 for the whole-line inaccuracy; the printed piecewise constants
    // (-17/48 on the first segment) do not match and are left unreconciled.
    let a = Distribution::piecewise_fixture_a();
    let b = Distribution::piecewise_fixture_b();
    let v = measures::wji(&a, &b).unwrap().value;
    assert!((v + 43.0 / 144.0).abs() < 1e-8, "oracle value for the fixture pair: {v}");
    let printed = -17.0 / 48.0;
    assert!((v - printed).abs() > 0.05, "documented discrepancy vanished");
    // The residual curve stays defined and decreasing between the segment
    // breaks even though the printed formula disagrees with it.
    let mut prev = f64::INFINITY;
    for i in 0..=6 {
        let t = 0.3 * i as f64;
        let w = measures::wrji(&a, &b, t).unwrap().value;
        assert!(w < prev + 1e-12);
        prev = w;
    }

    // (c) Exponential and Weibull pair formulas: the typo-free versions
    // (no spurious e^{t(θ+λ)} factor, no extra 1/2 for Weibull) are the ones
    // the quadrature oracle confirms.
    let (theta, lam, t) = (1.0, 2.0, 1.0);
    let ours = measures::wrji(&exp(theta), &exp(lam), t).unwrap().value;
    let typo_free = -theta * lam * (t * (theta + lam) + 1.0) / (2.0 * (theta + lam) * (theta + lam));
    let with_factor = typo_free * (t * (theta + lam)).exp();
    assert!((ours - typo_free).abs() < 1e-10);
    assert!((ours - with_factor).abs() > 1e-3, "typo'd variant should differ");
    let wx = Distribution::weibull_rate(theta, 2.0).unwrap();
    let wy = Distribution::weibull_rate(lam, 2.0).unwrap();
    let ours = measures::wrji(&wx, &wy, t).unwrap().value;
    let typo_free = -theta * lam * (t * t * (theta + lam) + 1.0) / ((theta + lam) * (theta + lam));
    let halved_with_factor = 0.5 * typo_free * (t * t * (theta + lam)).exp();
    assert!((ours - typo_free).abs() < 1e-10);
    assert!((ours - halved_with_factor).abs() > 1e-3);

    report("criterion 9", true, "oracle values asserted; printed variants documented as discrepancies");
}
