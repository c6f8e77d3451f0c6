//! Command implementations. Each returns the tables it produced and the
//! resulting [`Status`]; emission and the cache are handled by [`run`].

use std::fs;
use std::io::Write;

use anyhow::{anyhow, bail, Context as _, Result};
use num_bigint::BigInt;

use crate::args::{CheckName, Cli, Command, ContractArgs, VerifyArgs};
use crate::cache;
use crate::config::{Config, Overrides, CACHE_ENV};
use crate::emit::{self, Cell, Report};
use fibcontract::contraction::{alpha_contract_iter, ClosedForm};
use fibcontract::fib::{fib, Constants};
use fibcontract::verify::{self, EulerSeries, VerificationReport};
use fibcontract::{ArithFn, Context, Mangoldt};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success = 0,
    CheckFailed = 1,
    Usage = 2,
    Budget = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Exit status for an error that escaped a command.
pub fn error_status(err: &anyhow::Error) -> Status {
    let budget = err.chain().any(|e| matches!(e.downcast_ref::<fibcontract::Error>(), Some(e) if e.is_budget()));
    if budget {
        Status::Budget
    } else {
        Status::Usage
    }
}

pub fn resolve_config(cli: &Cli) -> Result<Config> {
    let env_cache = std::env::var_os(CACHE_ENV).map(Into::into);
    let flags = Overrides {
        cache_path: cli.global.cache.clone(),
        factor_budget: cli.global.budget,
        output_format: cli.global.format,
        precision: cli.global.precision,
    };
    Config::resolve(cli.global.config.as_deref(), env_cache, flags)
}

/// Runs `cli`, writing plain values and tables to `stdout` (or `--out`) and
/// progress lines to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status> {
    let config = resolve_config(cli)?;
    let ctx = Context::with_budget(config.factor_budget);
    if let Some(path) = &config.cache_path {
        let records = cache::read_cache(path)?;
        cache::load(&ctx, &records)?;
    }

    let (reports, status) = match &cli.command {
        Command::Fib { n } => return plain(stdout, fib(*n)),
        Command::Alpha { n } => return plain(stdout, ctx.rank(*n)?),
        Command::EntryExponent { n } => return plain(stdout, ctx.entry_exponent(*n)?),
        Command::Contract(args) => contract(&ctx, &config, args)?,
        Command::Verify(args) => verify_command(&ctx, args, stderr)?,
        Command::ReportAsymptotics { x } => report_asymptotics(&ctx, &config, x)?,
        Command::Series { which, s, n } => series(which.as_deref(), s, n.unwrap_or(config.horizons.series_terms))?,
    };

    match &cli.global.out {
        Some(path) => {
            let mut file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            emit::write(&mut file, config.output_format, &reports, config.precision)?;
        }
        None => emit::write(stdout, config.output_format, &reports, config.precision)?,
    }
    if let Some(path) = &config.cache_path {
        cache::write_cache(path, &cache::snapshot(&ctx)?)?;
    }
    Ok(status)
}

fn plain(out: &mut dyn Write, value: impl std::fmt::Display) -> Result<Status> {
    writeln!(out, "{value}")?;
    Ok(Status::Success)
}

/// The closed form of `f_{α^depth}`, where one is known.
fn closed_form_for(function: &str, depth: u32) -> Option<ClosedForm> {
    match (function, depth) {
        ("mu" | "mobius", 1) => Some(ClosedForm::MuAlpha),
        ("mu" | "mobius", 2) => Some(ClosedForm::MuAlpha2),
        ("mu" | "mobius", _) => Some(ClosedForm::MuAlpha3),
        ("lambda" | "liouville", 1) => Some(ClosedForm::LambdaAlpha),
        _ => None,
    }
}

pub fn contract(ctx: &Context, config: &Config, args: &ContractArgs) -> Result<(Vec<Report>, Status)> {
    let f = ArithFn::by_name(&args.function).ok_or_else(|| anyhow!("unknown function `{}`", args.function))?;
    let depth = args.depth();
    if depth == 0 {
        bail!("depth must be at least 1");
    }
    let n_max = args.n_max(config.horizons.contract_n_max);
    let closed = closed_form_for(&args.function, depth);
    let mut report = Report::new(
        "contract",
        format!("f={}, depth={depth}, n_max={n_max}", f.name()),
        &["n", "direct", "closed", "match"],
    );
    let mut status = Status::Success;
    for n in 1..=n_max {
        let closed_value = closed.map(|c| BigInt::from(c.eval(n)));
        let (direct, matched) = match alpha_contract_iter(ctx, &f, depth, n) {
            Ok(v) => {
                let matched = closed_value.as_ref().map(|c| *c == v);
                (Cell::exact(v), matched)
            }
            Err(e) if e.is_budget() => {
                status = status.max(Status::Budget);
                (Cell::text("budget-exceeded"), None)
            }
            Err(e) => return Err(e.into()),
        };
        if matched == Some(false) {
            status = Status::CheckFailed;
        }
        report.push(vec![
            Cell::exact(n),
            direct,
            closed_value.map(Cell::exact).unwrap_or(Cell::Empty),
            matched.map(Cell::Bool).unwrap_or(Cell::Empty),
        ]);
    }
    Ok((vec![report], status))
}

/// The reference decimal for `c`, to the ten places usually quoted.
const C_REFERENCE: f64 = 0.204_361_883_4;

/// Default range of each check when `--x` is not given.
fn default_x(check: CheckName) -> f64 {
    match check {
        CheckName::Theorem1 => 25.0,
        CheckName::Corollary => 20.0,
        CheckName::Logprod => 40.0,
        CheckName::Asymptotics => 200.0,
        CheckName::PiAlpha => 60.0,
        CheckName::PhiIdentity => 30.0,
        CheckName::PhiRecursive => 25.0,
        CheckName::TTables => 30.0,
        CheckName::ClosedForms | CheckName::FixedPoint | CheckName::LambdaAlpha => 40.0,
        CheckName::Duality => 500.0,
        _ => 0.0,
    }
}

const ALL_CHECKS: [CheckName; 15] = [
    CheckName::Theorem1,
    CheckName::Corollary,
    CheckName::Logprod,
    CheckName::ConstantC,
    CheckName::Asymptotics,
    CheckName::PiAlpha,
    CheckName::PhiIdentity,
    CheckName::PhiRecursive,
    CheckName::EulerProduct,
    CheckName::TTables,
    CheckName::ClosedForms,
    CheckName::FixedPoint,
    CheckName::LambdaAlpha,
    CheckName::RankLemma,
    CheckName::Duality,
];

fn named_fn(name: &str) -> Result<ArithFn> {
    ArithFn::by_name(name).ok_or_else(|| anyhow!("unknown function `{name}`"))
}

pub fn run_check(ctx: &Context, check: CheckName, args: &VerifyArgs) -> Result<Vec<VerificationReport>> {
    let x = args.x.unwrap_or_else(|| default_x(check));
    let upto = x as u64;
    Ok(match check {
        CheckName::All => bail!("`all` is not a single check"),
        CheckName::Theorem1 => {
            let g = named_fn(args.g.as_deref().unwrap_or("one"))?;
            match args.f.as_deref() {
                Some("Lambda" | "mangoldt") => vec![verify::check_theorem1(ctx, &Mangoldt, &g, x)?],
                Some(f) => vec![verify::check_theorem1(ctx, &named_fn(f)?, &g, x)?],
                None => {
                    let mut out: Vec<VerificationReport> = ["mu", "phi", "lambda"]
                        .iter()
                        .map(|f| Ok(verify::check_theorem1(ctx, &named_fn(f)?, &g, x)?))
                        .collect::<Result<_>>()?;
                    out.push(verify::check_theorem1(ctx, &Mangoldt, &g, x)?);
                    out
                }
            }
        }
        CheckName::Corollary => {
            let pairs: Vec<(String, String)> = match (&args.f, &args.g) {
                (None, None) => [("mu", "one"), ("phi", "one"), ("lambda", "one"), ("phi", "id"), ("divisor_count", "lambda")]
                    .iter()
                    .map(|(f, g)| (f.to_string(), g.to_string()))
                    .collect(),
                (f, g) => vec![(f.clone().unwrap_or("mu".into()), g.clone().unwrap_or("one".into()))],
            };
            pairs
                .iter()
                .map(|(f, g)| Ok(verify::check_corollary_completely_mult(ctx, &named_fn(f)?, &named_fn(g)?, upto)?))
                .collect::<Result<_>>()?
        }
        CheckName::Logprod => vec![verify::check_logprod(upto, 1e-8)?],
        CheckName::ConstantC => vec![verify::check_constant_c(args.n.unwrap_or(50), C_REFERENCE, 1e-9)],
        CheckName::Asymptotics => {
            vec![verify::check_asymptotic_windows(ctx, upto, (upto / 4).max(1), (0.9, 1.1), 60, (0.8, 1.2))?]
        }
        CheckName::PiAlpha => vec![verify::check_pi_alpha(ctx, upto)?],
        CheckName::PhiIdentity => vec![verify::check_phi_identity(ctx, x)?],
        CheckName::PhiRecursive => vec![verify::check_phi_recursive(ctx, upto)?],
        CheckName::EulerProduct => {
            let which = match args.which.as_deref() {
                None => EulerSeries::ALL.to_vec(),
                Some(w) => vec![EulerSeries::parse(w).ok_or_else(|| anyhow!("unknown series `{w}`"))?],
            };
            let exponents = args.s.map(|s| vec![s]).unwrap_or_else(|| vec![2.0, 3.0]);
            let terms = args.n.unwrap_or(10_000);
            let mut out = Vec::new();
            for w in which {
                for &s in &exponents {
                    out.push(verify::euler_product_check(w, s, terms)?);
                }
            }
            out
        }
        CheckName::TTables => {
            (1..=3).map(|d| verify::check_t_tables(ctx, d, x)).collect::<fibcontract::Result<_>>()?
        }
        CheckName::ClosedForms => vec![verify::check_closed_forms(ctx, upto)?],
        CheckName::FixedPoint => vec![verify::check_fixed_point(ctx, upto)?],
        CheckName::LambdaAlpha => vec![verify::check_lambda_alpha(ctx, upto)?],
        CheckName::RankLemma => vec![verify::check_rank_lemma(50, 3, 12)?],
        CheckName::Duality => vec![verify::check_duality(upto, 200)?],
    })
}

fn verify_command(ctx: &Context, args: &VerifyArgs, stderr: &mut dyn Write) -> Result<(Vec<Report>, Status)> {
    let checks: Vec<CheckName> = if args.check == CheckName::All { ALL_CHECKS.to_vec() } else { vec![args.check] };
    let mut reports = Vec::new();
    let mut first_failure: Option<String> = None;
    for check in checks {
        for r in run_check(ctx, check, args)? {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            writeln!(stderr, "{verdict} {} ({})", r.check_name, r.parameters)?;
            if !r.passed && first_failure.is_none() {
                first_failure = Some(format!("{} ({})", r.check_name, r.parameters));
            }
            reports.push(Report::from(&r));
        }
    }
    let status = match first_failure {
        Some(name) => {
            writeln!(stderr, "first failing check: {name}")?;
            Status::CheckFailed
        }
        None => Status::Success,
    };
    Ok((reports, status))
}

const ASYMPTOTIC_COLUMNS: [&str; 5] = ["series", "x", "exact", "predicted", "ratio"];

pub fn report_asymptotics(ctx: &Context, config: &Config, xs: &[u64]) -> Result<(Vec<Report>, Status)> {
    let xs = if xs.is_empty() { config.horizons.asymptotics.clone() } else { xs.to_vec() };
    if xs.contains(&0) {
        bail!("sample points must be positive");
    }
    let constants = Constants::new();
    let mut report = Report::new(
        "asymptotics",
        format!("growth constant {}, pi_alpha bound {}", constants.three_logr_over_pi2, constants.pi_alpha_bound()),
        &ASYMPTOTIC_COLUMNS,
    );
    let mut status = Status::Success;
    let budget_row = |series: &str, x: u64| {
        vec![Cell::text(series), Cell::exact(x), Cell::text("budget-exceeded"), Cell::Empty, Cell::Empty]
    };
    for sample in verify::asymptotic_mangoldt_report(&xs) {
        report.push(vec![
            Cell::text("lambda-sum"),
            Cell::exact(sample.x),
            Cell::Real(sample.exact_value.approx()),
            Cell::Real(sample.predicted),
            Cell::Real(sample.ratio),
        ]);
    }
    for &x in xs.iter().filter(|&&x| x <= config.horizons.asymptotics_factor_x_max) {
        match verify::ep_weighted_sum(ctx, x) {
            Ok((_, s)) => report.push(vec![
                Cell::text("ep-sum"),
                Cell::exact(x),
                Cell::Real(s.exact_value.approx()),
                Cell::Real(s.predicted),
                Cell::Real(s.ratio),
            ]),
            Err(e) if e.is_budget() => {
                status = Status::Budget;
                report.push(budget_row("ep-sum", x));
            }
            Err(e) => return Err(e.into()),
        }
    }
    for &x in xs.iter().filter(|&&x| x <= config.horizons.asymptotics_factor_x_max) {
        match verify::pi_alpha(ctx, x) {
            Ok(count) => {
                // π_α(x) against bound · x² / log x; undefined at x = 1.
                let predicted = if x >= 2 {
                    constants.pi_alpha_bound() * (x * x) as f64 / (x as f64).ln()
                } else {
                    f64::NAN
                };
                let ratio = if x >= 2 { count as f64 / predicted } else { f64::NAN };
                let predicted = if x >= 2 { Cell::Real(predicted) } else { Cell::Empty };
                let ratio = if x >= 2 { Cell::Real(ratio) } else { Cell::Empty };
                report.push(vec![Cell::text("pi-alpha"), Cell::exact(x), Cell::exact(count), predicted, ratio]);
            }
            Err(e) if e.is_budget() => {
                status = Status::Budget;
                report.push(budget_row("pi-alpha", x));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((vec![report], status))
}

pub fn series(which: Option<&str>, exponents: &[f64], terms: u64) -> Result<(Vec<Report>, Status)> {
    let which = match which {
        None => EulerSeries::ALL.to_vec(),
        Some(w) => vec![EulerSeries::parse(w).ok_or_else(|| anyhow!("unknown series `{w}`"))?],
    };
    let mut report = Report::new(
        "series",
        format!("N={terms}"),
        &["which", "s", "n", "zeta_partial", "dirichlet_partial", "product", "polynomial", "tolerance", "within"],
    );
    let mut status = Status::Success;
    for w in which {
        for &s in exponents {
            let e = verify::euler_series(w, s, terms)?;
            let within = (e.product - e.polynomial).abs() <= e.tolerance;
            if !within {
                status = Status::CheckFailed;
            }
            report.push(vec![
                Cell::text(w.name()),
                Cell::Real(s),
                Cell::exact(terms),
                Cell::Real(e.zeta_partial),
                Cell::Real(e.dirichlet_partial),
                Cell::Real(e.product),
                Cell::Real(e.polynomial),
                Cell::Real(e.tolerance),
                Cell::Bool(within),
            ]);
        }
    }
    Ok((vec![report], status))
}
