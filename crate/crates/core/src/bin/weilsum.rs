use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use weilsum::charsum::{gauss_sum, stickelberger_check, AddChar, MultChar};
use weilsum::hyperg::{self, Context};
use weilsum::moments::empirical_m2;
use weilsum::suite::{run_suite, Format, Grid, SuiteConfig};
use weilsum::tracefn::{
    eval_family, sp_total_trace, su_total_trace, trace_membership, RawTrace, SpForm, SuForm, SumSpec, Target,
};
use weilsum::weilgrp::{find_entry, gu_total_weil, sp_weil_abs_sq, GroupKind};
use weilsum::{make_field, Error, FieldElem, Result};

#[derive(Parser)]
#[command(name = "weilsum", version, about = "Exact exponential sums over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gauss sums G(ψ, χ) for every χ of the given order.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        chi_order: u64,
    },
    /// The Stickelberger evaluation over GF(q²) for characters of order r.
    Stickelberger {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
    },
    /// Trace values of a family at parameter points.
    Trace(TraceArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Empirical second moments of ψ(x^A + t x^B) along a tower.
    Moments {
        #[arg(long = "A")]
        a: u64,
        #[arg(long = "B")]
        b: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        tower: Vec<u32>,
    },
    /// Weil character checks on a catalog group.
    Weil {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = WeilCheck::InnerProduct)]
        check: WeilCheck,
    },
    /// Hypergeometric parameter arithmetic; `hyperg grid` runs the default grid.
    Hyperg {
        /// Pass `grid` to tabulate the default grid as CSV.
        mode: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum)]
        context: Option<CtxArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Sp,
    Su,
    SuBis,
    Family,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, value_enum)]
    preset: Preset,
    #[arg(long)]
    p: u64,
    /// Degree of the evaluation field over GF(p).
    #[arg(long)]
    f: u32,
    /// Defaults to p.
    #[arg(long)]
    q: Option<u64>,
    /// n for sp/su, exponent A for `family`.
    #[arg(long)]
    n: u32,
    /// m for sp/su, exponent B for `family`.
    #[arg(long)]
    m: u32,
    /// Element codes (base-p digits, constant term least significant); all elements when omitted.
    #[arg(long, value_delimiter = ',')]
    param: Vec<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    f: Option<u32>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    tower: Option<Vec<u32>>,
    /// `default` or a JSON grid file; flags override file entries.
    #[arg(long, default_value = "default")]
    grid: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    dry_run: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sp,
    Gu,
    Su,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeilCheck {
    InnerProduct,
    Sum,
    Order,
}

#[derive(Clone, Copy, ValueEnum)]
enum CtxArg {
    Sp,
    Su,
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(s: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))? + "\n"))
}

fn gauss(p: u64, f: u32, r: u64) -> Result<()> {
    let k = make_field(p, f)?;
    let psi = AddChar::new(&k, 1);
    let mut rows = Vec::new();
    for chi in MultChar::of_order(&k, r)? {
        let g = gauss_sum(&psi, &chi)?;
        rows.push(json!({
            "chi_exponent": chi.exponent(),
            "value": g,
            "abs_square": g.abs_square().as_integer()?.to_string(),
        }));
    }
    print_json(&json!({ "field": k, "chi_order": r, "sums": rows }))
}

fn memberships(raw: &RawTrace, q: u64) -> serde_json::Value {
    json!({
        "Q": trace_membership(raw, Target::Q),
        "K": trace_membership(raw, Target::K),
        "pm_power_of_q": trace_membership(raw, Target::PmPowerOf(q)),
    })
}

fn trace(a: &TraceArgs) -> Result<()> {
    let e = make_field(a.p, a.f)?;
    let q = a.q.unwrap_or(a.p);
    let psi = AddChar::new(&make_field(a.p, 1)?, 1);
    let params: Vec<FieldElem> = if a.param.is_empty() {
        e.enumerate()
    } else {
        a.param
            .iter()
            .map(|&c| {
                if (c as u64) < e.size() {
                    Ok(e.elem(c))
                } else {
                    Err(Error::Hypothesis(format!("code {c} outside {e}")))
                }
            })
            .collect::<Result<_>>()?
    };
    let mut rows = Vec::new();
    for u in params {
        let raw = match a.preset {
            Preset::Sp => sp_total_trace(&psi, q, a.n, a.m, &u, SpForm::Pullback),
            Preset::Su => su_total_trace(&psi, q, a.n, a.m, &u, SuForm::W),
            Preset::SuBis if u.is_zero() => continue,
            Preset::SuBis => su_total_trace(&psi, q, a.n, a.m, &u, SuForm::WBis),
            Preset::Family => {
                let spec = SumSpec::binomial(a.p, a.n as u64, a.m as u64)?;
                eval_family(&spec, &e, std::slice::from_ref(&u))
            }
        }?;
        rows.push(json!({
            "param": u.code(),
            "value": raw.value,
            "abs_square": raw.abs_square().as_integer()?.to_string(),
            "memberships": memberships(&raw, q),
        }));
    }
    print_json(&json!({ "field": e, "rows": rows }))
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let mut grid = if a.grid == "default" { Grid::default() } else { Grid::from_file(&PathBuf::from(&a.grid))? };
    grid.p = a.p.or(grid.p);
    grid.f = a.f.or(grid.f);
    grid.q = a.q.or(grid.q);
    grid.n = a.n.or(grid.n);
    grid.m = a.m.or(grid.m);
    grid.tower = a.tower.or(grid.tower);
    let format = match a.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let cfg = SuiteConfig { grid, out: a.out.clone(), format, jobs: a.jobs, dry_run: a.dry_run };
    let report = run_suite(&a.suite, &cfg)?;
    if a.out.is_none() {
        let mut text = report.render(format)?;
        if format == Format::Json {
            text.push('\n');
        }
        emit(&text)?;
    }
    let fails = report.failures().count();
    eprintln!("{}: {} rows, {} failed", report.suite, report.rows.len(), fails);
    Ok(report.exit_code())
}

fn moments(a: u64, b: u64, p: u64, tower: &[u32]) -> Result<()> {
    let spec = SumSpec::binomial(p, a, b)?;
    let fields = tower.iter().map(|&d| make_field(p, d)).collect::<Result<Vec<_>>>()?;
    let rep = empirical_m2(&spec, &fields, false)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["field_size", "empirical_num", "empirical_den", "predicted"]).map_err(io)?;
    for (size, r) in rep.field_sizes.iter().zip(&rep.empirical) {
        w.write_record([size.to_string(), r.numer().to_string(), r.denom().to_string(), rep.predicted.to_string()])
            .map_err(io)?;
    }
    emit(&String::from_utf8_lossy(&w.into_inner().map_err(|e| Error::Io(e.to_string()))?))
}

fn weil(group: GroupArg, n: u32, q: u64, check: WeilCheck) -> Result<()> {
    let kind = match group {
        GroupArg::Sp => GroupKind::Sp,
        GroupArg::Gu => GroupKind::Gu,
        GroupArg::Su => GroupKind::Su,
    };
    let start = Instant::now();
    let g = find_entry(kind, n, q)?.build()?;
    let f = match kind {
        GroupKind::Sp => g.class_function("|ω|²", sp_weil_abs_sq)?,
        _ => g.class_function("ζ", gu_total_weil)?,
    };
    let mut out = json!({ "group": format!("{kind:?}"), "n": n, "q": q, "order": g.order() });
    match check {
        WeilCheck::InnerProduct if kind == GroupKind::Sp => {
            // |ω|² is already a product, so the inner product with ω is its mean.
            out["inner_product"] = json!(format!("{}", num_rational::BigRational::new(f.total(), g.order().into())));
        }
        WeilCheck::InnerProduct => out["inner_product"] = json!(f.inner_product(&f)?.to_string()),
        WeilCheck::Sum => out["sum"] = json!(f.total().to_string()),
        WeilCheck::Order => {}
    }
    out["elapsed"] = json!(start.elapsed().as_secs_f64());
    print_json(&out)
}

fn hyperg_cmd(
    mode: Option<String>,
    q: Option<u64>,
    n: Option<u32>,
    m: Option<u32>,
    ctx: Option<CtxArg>,
) -> Result<i32> {
    match mode.as_deref() {
        Some("grid") => {
            let cfg = SuiteConfig { format: Format::Csv, ..Default::default() };
            let report = run_suite("hyperg-grid", &cfg)?;
            emit(&report.to_csv()?)?;
            Ok(report.exit_code())
        }
        Some(other) => Err(Error::Hypothesis(format!("unknown hyperg mode {other}; expected `grid`"))),
        None => {
            let (q, n, m) = match (q, n, m) {
                (Some(q), Some(n), Some(m)) => (q, n, m),
                _ => return Err(Error::Hypothesis("--q, --n and --m are required".into())),
            };
            let context = match ctx {
                Some(CtxArg::Sp) => Context::Sp,
                Some(CtxArg::Su) => Context::Su,
                None if (n + m) % 2 == 1 => Context::Sp,
                None => Context::Su,
            };
            let gcds = hyperg::standing_gcds(q, n, m, context)?;
            let splus = match context {
                Context::Sp => hyperg::splus_sp(q, n, m)?,
                Context::Su => hyperg::splus_su(q, n, m)?,
            };
            let ok = gcds.passed() && splus.passed();
            print_json(&json!({ "standing_gcds": gcds, "splus": splus, "passed": ok }))?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gauss { p, f, chi_order } => gauss(p, f, chi_order).map(|_| 0),
        Cmd::Stickelberger { q, r } => {
            let rep = stickelberger_check(q, r)?;
            print_json(&rep)?;
            emit(if rep.passed() { "pass\n" } else { "fail\n" })?;
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Cmd::Trace(a) => trace(&a).map(|_| 0),
        Cmd::Verify(a) => verify(a),
        Cmd::Moments { a, b, p, tower } => moments(a, b, p, &tower).map(|_| 0),
        Cmd::Weil { group, n, q, check } => weil(group, n, q, check).map(|_| 0),
        Cmd::Hyperg { mode, q, n, m, context } => hyperg_cmd(mode, q, n, m, context),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
