//! Command-line front end: measures, curves, estimation, bandwidth
//! selection, simulation, fitting, and the real-data comparison pipeline.
//!
//! Output is CSV on stdout by default (`--json` switches to JSON where a
//! subcommand supports it). Usage errors exit with 2; computation failures
//! exit with 1 and print machine-readable JSON
//! `{"error": <code>, "message": <text>}` on stderr.

use clap::{Args, Parser, Subcommand};
use wrji::distributions::{parse_spec, Distribution};
use wrji::error::Error;
use wrji::estimators::{
    cv_bandwidth_cdf, cv_bandwidth_pdf, BandwidthRule, EstimatorConfig, KernelSpec, Sample,
    SfEstimator, WrjiEstimator,
};
use wrji::fitting::{self, DatasetRef, FitFamily};
use wrji::measures::{self, MeasureValue, TimeGrid};
use wrji::simulation;

/// Default seed used whenever `--seed` is omitted, so documented commands
/// reproduce exactly.
const DEFAULT_SEED: u64 = 20240 + 1109;

#[derive(Parser)]
#[command(
    name = "wrji",
    about = "Weighted residual extropy-inaccuracy measures: closed forms, quadrature, estimators, simulation, fitting",
    long_about = None,
    after_help = DIST_GRAMMAR
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const DIST_GRAMMAR: &str = "\
DISTRIBUTION SPECS
  family(key=value,...), whitespace-insensitive, case-insensitive names:
    exp(rate=R)                      weibull(rate=R,shape=K)
    lindley(lambda=L)                uniform(c=C,d=D)
    beta(alpha=A,beta=B)             power(k=K)        [cdf x^k on (0,1)]
    ll(alpha=A,lambda=L)             apll(alpha=A,lambda=L,a=A2)
    exll(alpha=A,lambda=L,a=A2)      gee(lambda=L,alpha=A,theta=T)
    eeg(alpha=A,theta=T,p=P)         gamma(shape=K,rate=R)
    piecewise(fixture=a|b)           phr(base=<spec>,gamma=G)
  phr derives the proportional-hazard-rate law sf_base^gamma.

TIME GRIDS
  start:stop:step (inclusive of both endpoints within 1e-12), e.g. 0:2:0.1.

DATA FILES
  One number per line, or file:column to select a CSV column by name/index.
";

#[derive(Subcommand)]
enum Command {
    /// Evaluate a measure for one or two distributions at an optional time.
    Measure(MeasureArgs),
    /// Evaluate a measure along a time grid; CSV rows t,value,route,abs_error.
    Curve(CurveArgs),
    /// Estimate WRJI non-parametrically from two data samples.
    Estimate(EstimateArgs),
    /// Select a cross-validated bandwidth for a data sample.
    Bandwidth(BandwidthArgs),
    /// Run a seeded Monte Carlo bias/MSE study of the two estimators.
    Simulate(SimulateArgs),
    /// Fit families to data by maximum likelihood, with K-S goodness of fit.
    Fit(FitArgs),
    /// Real-data pipeline: parametric WRJI curves vs plug-in estimates.
    Compare(CompareArgs),
    /// List or dump the embedded datasets.
    Datasets(DatasetsArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// One of: extropy, weighted-extropy, residual-extropy,
    /// weighted-residual-extropy, wji, wrji, wrdj, weighted-discrimination,
    /// past-wji, crj, dynamic-survival-extropy, mrl, vitality.
    #[arg(long)]
    kind: String,
    /// Distribution spec for X.
    #[arg(long)]
    x: String,
    /// Distribution spec for Y (two-distribution measures).
    #[arg(long)]
    y: Option<String>,
    /// Evaluation time t (residual/past measures).
    #[arg(long)]
    t: Option<f64>,
    /// Force the evaluation route for wji/wrji.
    #[arg(long, value_parser = ["auto", "closed", "quadrature"], default_value = "auto")]
    route: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: Option<String>,
    /// Time grid start:stop:step.
    #[arg(long)]
    t: String,
}

#[derive(Args)]
struct EstimateArgs {
    /// Data file for the X sample (one number per line, or file:column).
    #[arg(long)]
    x_data: String,
    /// Data file for the Y sample.
    #[arg(long)]
    y_data: String,
    /// Single time or grid start:stop:step.
    #[arg(long)]
    t: String,
    /// Survival normalizer: ecdf or kernel.
    #[arg(long, value_parser = ["ecdf", "kernel"], default_value = "kernel")]
    mode: String,
    /// Density bandwidth: cv or fixed:H.
    #[arg(long, default_value = "cv")]
    bandwidth: String,
    /// Survival bandwidth (kernel mode): cv or fixed:H.
    #[arg(long, default_value = "cv")]
    sf_bandwidth: String,
    #[arg(long, value_parser = ["gaussian", "epanechnikov"], default_value = "gaussian")]
    kernel: String,
}

#[derive(Args)]
struct BandwidthArgs {
    #[arg(long)]
    data: String,
    /// cv-pdf (density criterion) or cv-cdf (smoothed-CDF criterion).
    #[arg(long, value_parser = ["cv-pdf", "cv-cdf"])]
    rule: String,
    #[arg(long, value_parser = ["gaussian", "epanechnikov"], default_value = "gaussian")]
    kernel: String,
}

#[derive(Args)]
struct SimulateArgs {
    /// Config file (key = value lines; see the guide).
    #[arg(long, conflicts_with = "preset")]
    config: Option<String>,
    /// Built-in study block: table1-exp or table1-beta.
    #[arg(long, value_parser = ["table1-exp", "table1-beta"])]
    preset: Option<String>,
    /// Replications override (presets default to 10000).
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for replications (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Emit the wide table shape instead of long rows.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct FitArgs {
    /// Comma-separated families: ll, apll, exll, wei, gee, eeg.
    #[arg(long)]
    family: String,
    /// Data file, or use --dataset.
    #[arg(long, conflicts_with = "dataset")]
    data: Option<String>,
    /// Embedded dataset name (see `wrji datasets`).
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, conflicts_with = "dataset")]
    data: Option<String>,
    #[arg(long)]
    dataset: Option<String>,
    /// Family taken as the actual law of the data.
    #[arg(long)]
    actual: String,
    /// Comma-separated candidate families assigned by the experimenter.
    #[arg(long)]
    candidates: String,
    /// Time grid start:stop:step.
    #[arg(long)]
    t: String,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DatasetsArgs {
    /// Dump this dataset's values (one per line) instead of listing.
    #[arg(long)]
    name: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.code(), "message": e.to_string() })
            );
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Measure(args) => measure_cmd(args),
        Command::Curve(args) => curve_cmd(args),
        Command::Estimate(args) => estimate_cmd(args),
        Command::Bandwidth(args) => bandwidth_cmd(args),
        Command::Simulate(args) => simulate_cmd(args),
        Command::Fit(args) => fit_cmd(args),
        Command::Compare(args) => compare_cmd(args),
        Command::Datasets(args) => datasets_cmd(args),
    }
}

fn need_t(t: Option<f64>, kind: &str) -> Result<f64, Error> {
    t.ok_or_else(|| Error::Parse(format!("measure {kind:?} needs --t")))
}

/// Evaluate one measure kind; `t` defaults to 0 where it is optional.
fn eval_measure(
    kind: &str,
    x: &Distribution,
    y: Option<&Distribution>,
    t: Option<f64>,
    route: &str,
) -> Result<MeasureValue, Error> {
    let y_req = |k: &str| -> Result<&Distribution, Error> {
        y.ok_or_else(|| Error::Parse(format!("measure {k:?} needs --y")))
    };
    match kind {
        "extropy" => measures::extropy(x),
        "weighted-extropy" => measures::weighted_extropy(x),
        "residual-extropy" => measures::residual_extropy(x, need_t(t, kind)?),
        "weighted-residual-extropy" => {
            let t = need_t(t, kind)?;
            match route {
                "quadrature" => measures::weighted_residual_extropy_quadrature(x, t),
                _ => measures::weighted_residual_extropy(x, t),
            }
        }
        "wji" => match route {
            "quadrature" => measures::wrji_quadrature(x, y_req(kind)?, 0.0),
            "closed" => closed_or_fail(x, y_req(kind)?, 0.0),
            _ => measures::wji(x, y_req(kind)?),
        },
        "wrji" => {
            let t = need_t(t, kind)?;
            match route {
                "quadrature" => measures::wrji_quadrature(x, y_req(kind)?, t),
                "closed" => closed_or_fail(x, y_req(kind)?, t),
                _ => measures::wrji(x, y_req(kind)?, t),
            }
        }
        "wrdj" => measures::wrdj(x, y_req(kind)?, need_t(t, kind)?),
        "weighted-discrimination" => measures::weighted_discrimination(x, y_req(kind)?),
        "past-wji" => measures::past_wji(x, y_req(kind)?, need_t(t, kind)?),
        "crj" => measures::crj(x),
        "dynamic-survival-extropy" => measures::dynamic_survival_extropy(x, need_t(t, kind)?),
        "mrl" => measures::mrl(x, need_t(t, kind)?).map(|v| MeasureValue {
            value: v,
            route: measures::Route::Quadrature,
            abs_error: f64::NAN,
        }),
        "vitality" => measures::vitality(x, need_t(t, kind)?).map(|v| MeasureValue {
            value: v,
            route: measures::Route::Quadrature,
            abs_error: f64::NAN,
        }),
        other => Err(Error::Parse(format!("unknown measure kind {other:?}"))),
    }
}

fn closed_or_fail(x: &Distribution, y: &Distribution, t: f64) -> Result<MeasureValue, Error> {
    measures::wrji_closed_value(x, y, t)
        .map(|v| MeasureValue { value: v, route: measures::Route::ClosedForm, abs_error: 0.0 })
        .ok_or_else(|| Error::Parse("no closed form registered for this pair".into()))
}

fn measure_cmd(args: MeasureArgs) -> Result<(), Error> {
    let x = parse_spec(&args.x)?;
    let y = match &args.y {
        Some(spec) => Some(parse_spec(spec)?),
        None => None,
    };
    let v = eval_measure(&args.kind, &x, y.as_ref(), args.t, &args.route)?;
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "kind": args.kind,
                "x": x.to_string(),
                "y": y.map(|d| d.to_string()),
                "t": args.t,
                "value": v.value,
                "route": v.route,
                "abs_error": if v.abs_error.is_nan() { None } else { Some(v.abs_error) },
            })
        );
    } else {
        println!("kind,x,y,t,value,route,abs_error");
        println!(
            "{},{},{},{},{},{},{}",
            args.kind,
            x,
            args.y.as_deref().unwrap_or(""),
            args.t.map(|t| t.to_string()).unwrap_or_default(),
            v.value,
            route_name(v.route),
            if v.abs_error.is_nan() { String::new() } else { v.abs_error.to_string() },
        );
    }
    Ok(())
}

fn route_name(r: measures::Route) -> &'static str {
    match r {
        measures::Route::ClosedForm => "closed_form",
        measures::Route::Quadrature => "quadrature",
    }
}

fn curve_cmd(args: CurveArgs) -> Result<(), Error> {
    let x = parse_spec(&args.x)?;
    let y = match &args.y {
        Some(spec) => Some(parse_spec(spec)?),
        None => None,
    };
    let grid = TimeGrid::from_range_spec(&args.t)?;
    println!("t,value,route,abs_error");
    for &t in grid.points() {
        let v = eval_measure(&args.kind, &x, y.as_ref(), Some(t), "auto")?;
        println!(
            "{},{},{},{}",
            t,
            v.value,
            route_name(v.route),
            if v.abs_error.is_nan() { String::new() } else { v.abs_error.to_string() }
        );
    }
    Ok(())
}

fn parse_bandwidth_rule(s: &str, cv: BandwidthRule) -> Result<BandwidthRule, Error> {
    if s == "cv" {
        return Ok(cv);
    }
    if let Some(h) = s.strip_prefix("fixed:") {
        let h: f64 = h
            .parse()
            .map_err(|_| Error::Parse(format!("bad fixed bandwidth {h:?}")))?;
        return Ok(BandwidthRule::Fixed(h));
    }
    Err(Error::Parse(format!("bandwidth must be 'cv' or 'fixed:H', got {s:?}")))
}

fn parse_kernel(s: &str) -> KernelSpec {
    match s {
        "epanechnikov" => KernelSpec::Epanechnikov,
        _ => KernelSpec::Gaussian,
    }
}

fn parse_times(spec: &str) -> Result<Vec<f64>, Error> {
    if spec.contains(':') {
        Ok(TimeGrid::from_range_spec(spec)?.points().to_vec())
    } else {
        spec.parse::<f64>()
            .map(|t| vec![t])
            .map_err(|_| Error::Parse(format!("bad time {spec:?}")))
    }
}

fn estimate_cmd(args: EstimateArgs) -> Result<(), Error> {
    let sx = Sample::new(fitting::read_data_file(&args.x_data)?)?;
    let sy = Sample::new(fitting::read_data_file(&args.y_data)?)?;
    let cfg = EstimatorConfig {
        kernel: parse_kernel(&args.kernel),
        density_rule: parse_bandwidth_rule(&args.bandwidth, BandwidthRule::CvPdf)?,
        survival_rule: parse_bandwidth_rule(&args.sf_bandwidth, BandwidthRule::CvCdf)?,
    };
    let mode = if args.mode == "ecdf" { SfEstimator::Ecdf } else { SfEstimator::Kernel };
    let est = WrjiEstimator::new(sx, sy, &cfg)?;
    let ts = parse_times(&args.t)?;
    let (hfx, hfy) = est.density_bandwidths();
    println!("t,estimate,mode,h_fx,h_fy");
    for &t in &ts {
        let v = est.estimate(t, mode)?;
        println!("{t},{v},{},{hfx},{hfy}", args.mode);
    }
    Ok(())
}

fn bandwidth_cmd(args: BandwidthArgs) -> Result<(), Error> {
    let s = Sample::new(fitting::read_data_file(&args.data)?)?;
    let kernel = parse_kernel(&args.kernel);
    let h = match args.rule.as_str() {
        "cv-pdf" => cv_bandwidth_pdf(&s, kernel)?,
        _ => cv_bandwidth_cdf(&s, kernel)?,
    };
    println!("rule,kernel,n,bandwidth");
    println!("{},{},{},{}", args.rule, kernel.name(), s.len(), h);
    Ok(())
}

fn simulate_cmd(args: SimulateArgs) -> Result<(), Error> {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let configs: Vec<simulation::McConfig> = match (&args.config, &args.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::UnreadableData(format!("{path}: {e}")))?;
            let mut cfg = simulation::parse_config(&text)?;
            if let Some(r) = args.replications {
                cfg.replications = r;
            }
            if args.seed.is_some() {
                cfg.seed = seed;
            }
            vec![cfg]
        }
        (None, Some(preset)) => {
            let r = args.replications.unwrap_or(10_000);
            match preset.as_str() {
                "table1-exp" => simulation::table1_exponential_configs(r, seed),
                _ => simulation::table1_beta_configs(r, seed),
            }
        }
        _ => return Err(Error::Parse("simulate needs exactly one of --config or --preset".into())),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| Error::NonConvergence(format!("thread pool: {e}")))?;
    let reports: Vec<simulation::SimulationReport> = pool.install(|| {
        configs
            .iter()
            .map(simulation::run_mc)
            .collect::<Result<Vec<_>, Error>>()
    })?;
    if args.table {
        print!("{}", simulation::emit_table(&reports));
    } else {
        for (i, r) in reports.iter().enumerate() {
            let csv = r.to_csv();
            if i == 0 {
                print!("{csv}");
            } else {
                // Skip the repeated header for subsequent runs.
                print!("{}", csv.split_once('\n').map(|x| x.1).unwrap_or(""));
            }
        }
    }
    Ok(())
}

fn load_fit_data(data: &Option<String>, dataset: &Option<String>) -> Result<Vec<f64>, Error> {
    match (data, dataset) {
        (Some(path), None) => fitting::read_data_file(path),
        (None, Some(name)) => Ok(DatasetRef::from_name(name)?.values()),
        _ => Err(Error::Parse("need exactly one of --data or --dataset".into())),
    }
}

fn fit_cmd(args: FitArgs) -> Result<(), Error> {
    let data = load_fit_data(&args.data, &args.dataset)?;
    let families: Vec<FitFamily> = args
        .family
        .split(',')
        .map(|f| FitFamily::from_name(f.trim()))
        .collect::<Result<_, Error>>()?;
    let reports: Vec<fitting::FitReport> = families
        .iter()
        .map(|&f| fitting::mle(f, &data, &[]))
        .collect::<Result<_, Error>>()?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    } else {
        println!("family,parameter,estimate,log_likelihood,ks_statistic,ks_pvalue,converged");
        for r in &reports {
            for (name, value) in r.param_names.iter().zip(&r.params) {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.family, name, value, r.log_likelihood, r.ks_statistic, r.ks_pvalue,
                    r.converged
                );
            }
        }
    }
    Ok(())
}

fn compare_cmd(args: CompareArgs) -> Result<(), Error> {
    let data = load_fit_data(&args.data, &args.dataset)?;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let actual_family = FitFamily::from_name(&args.actual)?;
    let actual_fit = fitting::mle(actual_family, &data, &[])?;
    let actual = actual_fit.distribution();
    let mut candidates = Vec::new();
    for name in args.candidates.split(',') {
        let fam = FitFamily::from_name(name.trim())?;
        let fit = fitting::mle(fam, &data, &[])?;
        candidates.push((fam.name().to_string(), fit.distribution()));
    }
    let grid = TimeGrid::from_range_spec(&args.t)?;
    let report = fitting::wrji_model_comparison(
        &data,
        actual_family.name(),
        &actual,
        &candidates,
        grid.points(),
        seed,
    )?;
    print!("{}", report.to_csv());
    for (t, reason) in &report.skipped {
        eprintln!("# skipped t={t}: {reason}");
    }
    Ok(())
}

fn datasets_cmd(args: DatasetsArgs) -> Result<(), Error> {
    match &args.name {
        None => {
            println!("name,n,min,max");
            for d in DatasetRef::ALL {
                let v = d.values();
                println!("{},{},{},{}", d.name(), v.len(), v[0], v[v.len() - 1]);
            }
        }
        Some(name) => {
            let d = DatasetRef::from_name(name)?;
            for v in d.raw_values() {
                println!("{v}");
            }
        }
    }
    Ok(())
}
