use rayon::prelude::*;
use serde::Serialize;
use unijac_core::asymptotics::{convergence_study, StarMapData};
use unijac_core::ball::{BallExtremal, MonomialIndex};
use unijac_core::comb::{solve_parameters, solve_parameters_with_fallback, CombDomainSpec};
use unijac_core::jacobi::{solve, SolveOptions};
use unijac_core::oracle::{minimax_1d, minimax_triangle};
use unijac_core::{AsymptoticProfile, Complex64, WeightParams};

use crate::args::{
    AsymArgs, BallArgs, Command, Common, IndexArgs, MapArgs, OracleMode, WeightDegree,
};
use crate::error::CliError;
use crate::output::Payload;
use crate::records::*;
use crate::verify;

pub type Item = Result<Payload, CliError>;

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Jacobi(_) => "jacobi",
        Command::Map(_) => "map",
        Command::Ball(_) => "ball",
        Command::Asym(_) => "asym",
        Command::Oracle(_) => "oracle",
        Command::Verify(_) => "verify",
    }
}

/// Runs a command. Parameter validation happens before any solve.
pub fn execute(cmd: &Command, common: &Common) -> Result<Vec<Item>, CliError> {
    let opts = SolveOptions {
        tol: common.tol,
        max_iter: common.max_iter,
    };
    opts.validate()
        .map_err(|e| CliError::solver("solver options", e))?;
    Ok(match cmd {
        Command::Jacobi(p) => fan_out(weight_cases(p, common.sweep)?, |c| jacobi(c, opts)),
        Command::Map(a) => fan_out(weight_cases(&a.params, common.sweep)?, |c| map(c, a, opts)),
        Command::Ball(a) => {
            if a.verify && a.grid < 2 {
                return Err(CliError::Usage("--grid must be at least 2".into()));
            }
            fan_out(index_cases(&a.index, common.sweep)?, |c| ball(*c, a, opts))
        }
        Command::Asym(a) => {
            if common.sweep {
                return Err(CliError::Usage("asym does not take --sweep".into()));
            }
            vec![asym(a, opts)]
        }
        Command::Oracle(o) => match &o.mode {
            OracleMode::Line { params, grid } => {
                fan_out(weight_cases(params, common.sweep)?, |&(a, b, n)| {
                    let ctx = format!("oracle line alpha={a} beta={b} n={n}");
                    let w = WeightParams::new(a, b).map_err(|e| CliError::solver(&ctx, e))?;
                    let r = minimax_1d(w, n, *grid).map_err(|e| CliError::solver(&ctx, e))?;
                    let rec = OracleRecord::line(w, n, &r);
                    Payload::new(&rec, &[OracleCsv::from(&rec)])
                })
            }
            OracleMode::Triangle { index, grid } => {
                fan_out(index_cases(index, common.sweep)?, |&idx| {
                    let ctx = format!("oracle triangle {idx}");
                    let r = minimax_triangle(&idx, *grid).map_err(|e| CliError::solver(&ctx, e))?;
                    let rec = OracleRecord::triangle(idx, &r);
                    Payload::new(&rec, &[OracleCsv::from(&rec)])
                })
            }
        },
        Command::Verify(v) => {
            if common.sweep {
                return Err(CliError::Usage("verify does not take --sweep".into()));
            }
            let suite = verify::run(common.seed, v.cases, opts);
            let mut p = Payload::new(&suite, &suite.checks)?;
            p.check_failed = !suite.passed;
            vec![Ok(p)]
        }
    })
}

fn fan_out<C: Sync, F: Fn(&C) -> Item + Sync + Send>(cases: Vec<C>, f: F) -> Vec<Item> {
    cases.par_iter().map(f).collect()
}

fn single_or_sweep<T: Copy>(name: &str, v: &[T], sweep: bool) -> Result<(), CliError> {
    if v.is_empty() {
        return Err(CliError::Usage(format!("--{name} needs a value")));
    }
    if v.len() > 1 && !sweep {
        return Err(CliError::Usage(format!(
            "--{name} has {} values; pass --sweep to solve a grid",
            v.len()
        )));
    }
    Ok(())
}

fn weight_cases(p: &WeightDegree, sweep: bool) -> Result<Vec<(f64, f64, usize)>, CliError> {
    single_or_sweep("alpha", &p.alpha, sweep)?;
    single_or_sweep("beta", &p.beta, sweep)?;
    single_or_sweep("n", &p.n, sweep)?;
    for &a in &p.alpha {
        WeightParams::new(a, 0.0).map_err(|e| CliError::solver("weight exponents", e))?;
    }
    for &b in &p.beta {
        WeightParams::new(0.0, b).map_err(|e| CliError::solver("weight exponents", e))?;
    }
    let mut out = Vec::new();
    for &a in &p.alpha {
        for &b in &p.beta {
            for &n in &p.n {
                out.push((a, b, n));
            }
        }
    }
    Ok(out)
}

fn index_cases(p: &IndexArgs, sweep: bool) -> Result<Vec<MonomialIndex>, CliError> {
    single_or_sweep("k1", &p.k1, sweep)?;
    single_or_sweep("l1", &p.l1, sweep)?;
    single_or_sweep("k2", &p.k2, sweep)?;
    single_or_sweep("l2", &p.l2, sweep)?;
    let mut out = Vec::new();
    for &k1 in &p.k1 {
        for &l1 in &p.l1 {
            for &k2 in &p.k2 {
                for &l2 in &p.l2 {
                    out.push(MonomialIndex::new(k1, l1, k2, l2));
                }
            }
        }
    }
    Ok(out)
}

fn joined(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct JacobiCsv {
    alpha: f64,
    beta: f64,
    n: usize,
    deviation: f64,
    log_leading: f64,
    residual: f64,
    iterations: usize,
    xi: String,
    eta: String,
}

impl From<&JacobiRecord> for JacobiCsv {
    fn from(r: &JacobiRecord) -> Self {
        Self {
            alpha: r.alpha,
            beta: r.beta,
            n: r.n,
            deviation: r.deviation,
            log_leading: r.log_leading,
            residual: r.residual,
            iterations: r.iterations,
            xi: joined(&r.xi),
            eta: joined(&r.eta),
        }
    }
}

fn jacobi(&(a, b, n): &(f64, f64, usize), opts: SolveOptions) -> Item {
    let ctx = format!("jacobi alpha={a} beta={b} n={n}");
    let w = WeightParams::new(a, b).map_err(|e| CliError::solver(&ctx, e))?;
    let sol = solve(w, n, opts).map_err(|e| CliError::solver(&ctx, e))?;
    let rec = JacobiRecord::from(&sol);
    Payload::new(&rec, &[JacobiCsv::from(&rec)])
}

#[derive(Serialize)]
struct MapCsv {
    alpha: f64,
    beta: f64,
    n: usize,
    log_capacity: f64,
    branch_shift: f64,
    residual: f64,
    iterations: usize,
    origin: OriginRecord,
    remez_discrepancy: Option<f64>,
    xi: String,
    eta: String,
}

#[derive(Serialize)]
struct GeometryCsv<'a> {
    label: &'a str,
    u: f64,
    v: f64,
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn map(&(a, b, n): &(f64, f64, usize), args: &MapArgs, opts: SolveOptions) -> Item {
    let ctx = format!("map alpha={a} beta={b} n={n}");
    let err = |e| CliError::solver(&ctx, e);
    let spec = CombDomainSpec::new(WeightParams::new(a, b).map_err(err)?, n);
    let data = if args.fallback {
        solve_parameters_with_fallback(spec, opts)
    } else {
        solve_parameters(spec, opts)
    }
    .map_err(err)?;
    if let Some(samples) = args.geometry {
        let lines = data.export_geometry(samples).map_err(err)?;
        let recs: Vec<PolylineRecord> = lines.iter().map(PolylineRecord::from).collect();
        let rows: Vec<GeometryCsv> = recs
            .iter()
            .flat_map(|l| {
                l.points.iter().map(move |p| GeometryCsv {
                    label: &l.label,
                    u: p[0],
                    v: p[1],
                })
            })
            .collect();
        return Payload::new(&recs, &rows);
    }
    let mut rec = MapRecord::from(&data);
    if args.compare {
        let sol = solve(spec.weight, n, opts).map_err(err)?;
        rec.remez_discrepancy = Some(
            max_diff(&sol.roots, &rec.xi)
                .max(max_diff(&sol.alternation_points, &rec.eta))
                .max((sol.log_leading - rec.log_capacity).abs()),
        );
    }
    let row = MapCsv {
        alpha: rec.alpha,
        beta: rec.beta,
        n: rec.n,
        log_capacity: rec.log_capacity,
        branch_shift: rec.branch_shift,
        residual: rec.residual,
        iterations: rec.iterations,
        origin: rec.origin,
        remez_discrepancy: rec.remez_discrepancy,
        xi: joined(&rec.xi),
        eta: joined(&rec.eta),
    };
    Payload::new(&rec, &[row])
}

#[derive(Serialize)]
struct BallCsv {
    k1: u32,
    l1: u32,
    k2: u32,
    l2: u32,
    alpha: f64,
    beta: f64,
    m: usize,
    lambda: f64,
    deviation: f64,
    split: usize,
    max_abs: Option<f64>,
    line_residual: Option<f64>,
    regions_ok: Option<bool>,
}

fn ball(idx: MonomialIndex, args: &BallArgs, opts: SolveOptions) -> Item {
    let ctx = format!("ball {idx}");
    let ext = BallExtremal::build(idx, opts).map_err(|e| CliError::solver(&ctx, e))?;
    let report = if args.verify {
        Some(
            ext.verify_on_triangle(args.grid)
                .map_err(|e| CliError::solver(&ctx, e))?,
        )
    } else {
        None
    };
    let rec = BallRecord::new(&ext, report.as_ref());
    let row = BallCsv {
        k1: rec.k1,
        l1: rec.l1,
        k2: rec.k2,
        l2: rec.l2,
        alpha: rec.jacobi.alpha,
        beta: rec.jacobi.beta,
        m: rec.jacobi.n,
        lambda: rec.lambda,
        deviation: rec.jacobi.deviation,
        split: rec.split,
        max_abs: rec.report.as_ref().map(|r| r.max_abs),
        line_residual: rec.report.as_ref().map(|r| r.line_residual),
        regions_ok: rec.report.as_ref().map(|r| r.regions_ok),
    };
    let mut p = Payload::new(&rec, &[row])?;
    p.check_failed = report.is_some_and(|r| !r.regions_ok());
    Ok(p)
}

#[derive(Serialize)]
struct StarCsv {
    alpha: f64,
    beta: f64,
    x1: f64,
    x2: f64,
    c_star: f64,
    degenerate: bool,
    z_re: Option<f64>,
    z_im: Option<f64>,
    w_re: Option<f64>,
    w_im: Option<f64>,
}

fn asym(args: &AsymArgs, opts: SolveOptions) -> Item {
    if let Some(alpha) = args.alpha {
        let beta = args.beta.unwrap_or(0.0);
        let ctx = format!("asym alpha={alpha} beta={beta}");
        let star = StarMapData::new(alpha, beta).map_err(|e| CliError::solver(&ctx, e))?;
        let mut rec = StarRecord::from(&star);
        if let Some(z) = &args.z {
            if z.len() != 2 {
                return Err(CliError::Usage("--z takes `re,im`".into()));
            }
            let w = star
                .eval_w(Complex64::new(z[0], z[1]))
                .map_err(|e| CliError::solver(&ctx, e))?;
            rec.z = Some([z[0], z[1]]);
            rec.w = Some([w.re, w.im]);
        }
        let row = StarCsv {
            alpha: rec.alpha,
            beta: rec.beta,
            x1: rec.x1,
            x2: rec.x2,
            c_star: rec.c_star,
            degenerate: rec.degenerate,
            z_re: rec.z.map(|z| z[0]),
            z_im: rec.z.map(|z| z[1]),
            w_re: rec.w.map(|w| w[0]),
            w_im: rec.w.map(|w| w[1]),
        };
        return Payload::new(&rec, &[row]);
    }
    let (Some(k1), Some(l1), Some(k2), Some(l2)) =
        (args.kappa1, args.lambda1, args.kappa2, args.lambda2)
    else {
        return Err(CliError::Usage(
            "asym needs either --kappa1 --lambda1 --kappa2 --lambda2 or --alpha [--beta]".into(),
        ));
    };
    let ctx = format!("asym profile ({k1}, {l1}, {k2}, {l2})");
    let profile = AsymptoticProfile::new(k1, l1, k2, l2).map_err(|e| CliError::solver(&ctx, e))?;
    match &args.study {
        None => {
            let rec = LimitRecord::new(&profile).map_err(|e| CliError::solver(&ctx, e))?;
            Payload::new(&rec, std::slice::from_ref(&rec))
        }
        Some(ns) => {
            let study =
                convergence_study(&profile, ns, opts).map_err(|e| CliError::solver(&ctx, e))?;
            for s in &study.skipped {
                eprintln!(
                    "{}",
                    serde_json::json!({ "notice": { "n": s.n, "skipped": s.reason } })
                );
            }
            let rec = StudyRecord::from(&study);
            Payload::new(&rec, &rec.rows)
        }
    }
}

#[derive(Serialize)]
struct OracleCsv {
    mode: String,
    alpha: Option<f64>,
    beta: Option<f64>,
    n: Option<usize>,
    k1: Option<u32>,
    l1: Option<u32>,
    k2: Option<u32>,
    l2: Option<u32>,
    deviation_lower: f64,
    deviation_upper: f64,
    grid_size: usize,
    coefficients: String,
}

impl From<&OracleRecord> for OracleCsv {
    fn from(r: &OracleRecord) -> Self {
        let idx = r.index.map(|i| i.map(Some)).unwrap_or([None; 4]);
        Self {
            mode: r.mode.clone(),
            alpha: r.alpha,
            beta: r.beta,
            n: r.n,
            k1: idx[0],
            l1: idx[1],
            k2: idx[2],
            l2: idx[3],
            deviation_lower: r.deviation_lower,
            deviation_upper: r.deviation_upper,
            grid_size: r.grid_size,
            coefficients: joined(&r.coefficients),
        }
    }
}
