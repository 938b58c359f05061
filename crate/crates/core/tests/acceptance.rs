//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unijac_core::asymptotics::{c_star, convergence_study, limit_constant};
use unijac_core::ball::{log_lambda, BallExtremal, MonomialIndex};
use unijac_core::comb::{solve_parameters, CombDomainSpec};
use unijac_core::jacobi::{solve, SolveOptions};
use unijac_core::oracle::{minimax_1d, minimax_triangle};
use unijac_core::{AsymptoticProfile, Complex64, WeightParams};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

fn w(a: f64, b: f64) -> WeightParams {
    WeightParams::new(a, b).unwrap()
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn classical_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=30 {
        let sol = solve(w(0.0, 0.0), n, opts()).map_err(|e| format!("n = {n}: {e}"))?;
        worst = worst.max((sol.log_leading - (2 * n - 1) as f64 * LN_2).abs());
    }
    check(
        worst <= 1e-10,
        format!("max |C_n - (2n-1) ln 2| = {worst:.2e} for n = 1..30"),
    )
}

fn degree_zero() -> Outcome {
    let mut worst = 0.0f64;
    for (a, b) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.5)] {
        let sol = solve(w(a, b), 0, opts()).map_err(|e| e.to_string())?;
        let exact = f64::powf(a, a) * f64::powf(b, b) / f64::powf(a + b, a + b);
        worst = worst.max((sol.deviation - exact).abs());
    }
    check(
        worst <= 1e-12,
        format!("max |L - a^a b^b/(a+b)^(a+b)| = {worst:.2e}"),
    )
}

fn hand_case() -> Outcome {
    let s2 = 2f64.sqrt();
    let sol = solve(w(1.0, 0.0), 1, opts()).map_err(|e| e.to_string())?;
    let e_xi = (sol.roots[0] - (2.0 * s2 - 2.0)).abs();
    let e_l = (sol.deviation - (3.0 - 2.0 * s2)).abs();
    let orc = minimax_1d(w(1.0, 0.0), 1, 2000).map_err(|e| e.to_string())?;
    let exact = 3.0 - 2.0 * s2;
    let bracket = orc.brackets(exact, 1e-6) && orc.width() <= 1e-6;
    check(
        e_xi <= 1e-10 && e_l <= 1e-10 && bracket,
        format!(
            "xi err {e_xi:.1e}, L err {e_l:.1e}, oracle [{:.10}, {:.10}]",
            orc.deviation_lower, orc.deviation_upper
        ),
    )
}

const GRID_PARAMS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

fn cross_solver_cases() -> impl Iterator<Item = (f64, f64, usize)> {
    GRID_PARAMS.into_iter().flat_map(|a| {
        GRID_PARAMS
            .into_iter()
            .flat_map(move |b| (0..=6).map(move |n| (a, b, n)))
    })
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn cross_solver() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (a, b, n) in cross_solver_cases() {
        let remez = solve(w(a, b), n, opts()).map_err(|e| format!("Remez ({a}, {b}, {n}): {e}"))?;
        let map = solve_parameters(CombDomainSpec::new(w(a, b), n), opts())
            .map_err(|e| format!("Newton ({a}, {b}, {n}): {e}"))?;
        let d = max_diff(&remez.roots, &map.prevertices_xi)
            .max(max_diff(&remez.alternation_points, &map.prevertices_eta))
            .max((remez.log_leading - map.log_capacity).abs());
        worst = worst.max(d);
        count += 1;
    }
    check(
        worst <= 1e-8,
        format!("{count} cases, max discrepancy in xi, eta, C_n = {worst:.2e}"),
    )
}

fn map_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_im = 0.0f64;
    for (a, b, n) in cross_solver_cases() {
        let remez = solve(w(a, b), n, opts()).map_err(|e| e.to_string())?;
        let map =
            solve_parameters(CombDomainSpec::new(w(a, b), n), opts()).map_err(|e| e.to_string())?;
        let scale = remez.log_leading.exp();
        for _ in 0..100 {
            let t: f64 = rng.gen_range(1e-9..1.0 - 1e-9);
            let wt = map
                .eval_w(Complex64::new(t, 0.0))
                .map_err(|e| e.to_string())?;
            let direct = remez.evaluate_weighted(t).abs() * scale;
            worst = worst.max((wt.re.exp() - direct).abs() / scale);
            let k = (wt.im / PI).round();
            worst_im = worst_im.max((wt.im - k * PI).abs());
        }
    }
    check(
        worst <= 1e-10 && worst_im <= 1e-10,
        format!("|e^Re w - weighted polynomial| / e^C_n <= {worst:.2e}, Im w off pi*Z by <= {worst_im:.2e}"),
    )
}

fn triangle_verifier() -> Outcome {
    let mut worst_max = 0.0f64;
    let mut least_max = f64::INFINITY;
    let mut worst_line = 0.0f64;
    let indices = MonomialIndex::all_up_to(8);
    for idx in &indices {
        let ext = BallExtremal::build(*idx, opts()).map_err(|e| format!("{idx}: {e}"))?;
        let rep = ext.verify_on_triangle(2000).map_err(|e| e.to_string())?;
        if !rep.regions.alternation || !rep.regions_ok() {
            return Err(format!("{idx}: {}", rep.check().unwrap_err()));
        }
        worst_max = worst_max.max(rep.max_abs);
        least_max = least_max.min(rep.max_abs);
        worst_line = worst_line.max(rep.line_residual);
    }
    check(
        worst_max <= 1.0 + 1e-9 && least_max >= 0.99 && worst_line <= 1e-10,
        format!(
            "{} indices, max|F| in [{least_max:.12}, {worst_max:.12}], diagonal residual {worst_line:.2e}",
            indices.len()
        ),
    )
}

fn triangle_oracle() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for idx in [
        MonomialIndex::new(1, 1, 0, 0),
        MonomialIndex::new(1, 0, 1, 0),
        MonomialIndex::new(2, 1, 1, 1),
        MonomialIndex::new(2, 2, 0, 0),
    ] {
        let l = (-log_lambda(&idx, opts()).map_err(|e| e.to_string())?).exp();
        let orc = minimax_triangle(&idx, 200).map_err(|e| e.to_string())?;
        let inside =
            orc.deviation_lower * (1.0 - 1e-3) <= l && l <= orc.deviation_upper * (1.0 + 1e-3);
        ok &= inside;
        lines.push(format!(
            "{idx}: L = {l:.10} in [{:.10}, {:.10}]",
            orc.deviation_lower, orc.deviation_upper
        ));
    }
    check(ok, lines.join("; "))
}

fn asymptotic_identities(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut p: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>());
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= s);
        if p[0] < p[1] {
            p.swap(0, 1);
        }
        if p[2] < p[3] {
            p.swap(2, 3);
        }
        let profile = AsymptoticProfile::new(p[0], p[1], p[2], p[3]).map_err(|e| e.to_string())?;
        let lim = limit_constant(&profile).map_err(|e| e.to_string())?;
        let cs = c_star(p[0] - p[1], p[2] - p[3]).map_err(|e| e.to_string())?;
        worst = worst.max((lim.value().ln() + cs).abs());
    }
    let e0 = (c_star(0.0, 0.0).unwrap() - 4f64.ln()).abs();
    let e1 = (c_star(0.5, 0.0).unwrap() - (4.0 * LN_2 - 1.5 * 3f64.ln())).abs();
    check(
        worst <= 1e-12 && e0 <= 1e-12 && e1 <= 1e-12,
        format!("product vs C_* on 100 profiles {worst:.2e}; C_*(0,0) err {e0:.1e}; C_*(1/2,0) err {e1:.1e}"),
    )
}

fn limit_constant_convergence() -> Outcome {
    let profile = AsymptoticProfile::new(0.375, 0.125, 0.375, 0.125).unwrap();
    let study = convergence_study(&profile, &[8, 16, 32, 64], opts()).map_err(|e| e.to_string())?;
    let gaps: Vec<f64> = study.rows.iter().map(|r| r.gap).collect();
    let last = *gaps.last().ok_or("no rows")?;
    let monotone = study.rows.len() == 4 && study.gaps_decreasing();

    let half = AsymptoticProfile::new(0.5, 0.0, 0.5, 0.0).unwrap();
    let evens: Vec<usize> = (1..=32).map(|k| 2 * k).collect();
    let exact = convergence_study(&half, &evens, opts()).map_err(|e| e.to_string())?;
    let worst = exact
        .rows
        .iter()
        .map(|r| (r.deviation_pow - 0.5).abs())
        .fold(0.0, f64::max);
    check(
        monotone && last <= 0.05 && worst <= 1e-10 && exact.rows.len() == evens.len(),
        format!(
            "gaps {} (n = 8..64); (1/2,0,1/2,0) max |L^(2/n) - 1/2| = {worst:.1e}",
            gaps.iter()
                .map(|g| format!("{g:.4}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

fn symmetry() -> Outcome {
    let mut worst = 0.0f64;
    for idx in MonomialIndex::all_up_to(8) {
        let MonomialIndex { k1, l1, k2, l2 } = idx;
        let base = log_lambda(&idx, opts()).map_err(|e| e.to_string())?;
        for other in [
            MonomialIndex::new(l1, k1, k2, l2),
            MonomialIndex::new(k1, l1, l2, k2),
            MonomialIndex::new(k2, l2, k1, l1),
        ] {
            let v = log_lambda(&other, opts()).map_err(|e| e.to_string())?;
            worst = worst.max((v - base).abs());
        }
    }
    let mut mirror = 0.0f64;
    for a in GRID_PARAMS {
        for b in GRID_PARAMS {
            for n in 0..=8 {
                let s = solve(w(a, b), n, opts()).map_err(|e| e.to_string())?;
                let m = solve(w(b, a), n, opts()).map_err(|e| e.to_string())?;
                let reflected: Vec<f64> = m.roots.iter().rev().map(|x| 1.0 - x).collect();
                mirror = mirror
                    .max(max_diff(&s.roots, &reflected))
                    .max((s.deviation - m.deviation).abs());
            }
        }
    }
    check(
        worst <= 1e-10 && mirror <= 1e-10,
        format!("index symmetries of ln Lambda {worst:.2e}; (a,b) <-> (b,a) mirror {mirror:.2e}"),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut failed = 0;
    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "classical closed form",
            Box::new(|_| classical_closed_form()),
        ),
        ("degree-zero closed form", Box::new(|_| degree_zero())),
        ("hand case and 1-D oracle", Box::new(|_| hand_case())),
        ("Remez vs comb-map Newton", Box::new(|_| cross_solver())),
        ("map identity on [0, 1]", Box::new(map_identity)),
        ("triangle verifier", Box::new(|_| triangle_verifier())),
        ("triangle oracle", Box::new(|_| triangle_oracle())),
        ("asymptotic identities", Box::new(asymptotic_identities)),
        (
            "limit convergence",
            Box::new(|_| limit_constant_convergence()),
        ),
        ("symmetries", Box::new(|_| symmetry())),
    ];
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut rng);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
