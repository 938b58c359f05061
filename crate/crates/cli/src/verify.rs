//! Randomized cross-checks. All cases are drawn up front from a seeded
//! generator, then solved in parallel, so the report depends only on the
//! seed and the case count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use unijac_core::asymptotics::{c_star, limit_constant};
use unijac_core::ball::{BallExtremal, MonomialIndex};
use unijac_core::comb::{solve_parameters, CombDomainSpec};
use unijac_core::jacobi::{solve, SolveOptions};
use unijac_core::oracle::minimax_1d;
use unijac_core::{AsymptoticProfile, Complex64, WeightParams};

use crate::records::{CheckRecord, SuiteRecord};

struct Check {
    name: &'static str,
    tolerance: f64,
    /// Per-case error; `None` means the case could not be solved.
    errors: Vec<Option<f64>>,
}

impl Check {
    fn record(self) -> CheckRecord {
        let failed_solve = self.errors.iter().any(Option::is_none);
        let max_error = self.errors.iter().flatten().copied().fold(0.0, f64::max);
        CheckRecord {
            name: self.name.to_string(),
            cases: self.errors.len(),
            max_error: if failed_solve {
                f64::INFINITY
            } else {
                max_error
            },
            tolerance: self.tolerance,
            passed: !failed_solve && max_error <= self.tolerance,
        }
    }
}

fn weight(a: f64, b: f64) -> WeightParams {
    WeightParams::new(a, b).expect("sampled exponents are valid")
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn run(seed: u64, cases: usize, opts: SolveOptions) -> SuiteRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<(f64, f64, usize, Vec<f64>)> = (0..cases)
        .map(|_| {
            let a = rng.gen_range(0.0..3.0);
            let b = rng.gen_range(0.0..3.0);
            let n = rng.gen_range(0..=8);
            let ts = (0..20).map(|_| rng.gen_range(1e-9..1.0 - 1e-9)).collect();
            (a, b, n, ts)
        })
        .collect();
    let small: Vec<(f64, f64, usize)> = (0..cases)
        .map(|_| {
            (
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0..=4),
            )
        })
        .collect();
    let indices: Vec<MonomialIndex> = (0..cases)
        .map(|_| loop {
            let idx = MonomialIndex::new(
                rng.gen_range(0..=4),
                rng.gen_range(0..=4),
                rng.gen_range(0..=4),
                rng.gen_range(0..=4),
            );
            if idx.total_degree() > 0 {
                break idx;
            }
        })
        .collect();
    let profiles: Vec<[f64; 4]> = (0..cases)
        .map(|_| {
            let mut p: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>() + 1e-3);
            let s: f64 = p.iter().sum();
            p.iter_mut().for_each(|v| *v /= s);
            [
                p[0].max(p[1]),
                p[0].min(p[1]),
                p[2].max(p[3]),
                p[2].min(p[3]),
            ]
        })
        .collect();

    let cross: Vec<(Option<f64>, Option<f64>, Option<f64>)> = weights
        .par_iter()
        .map(|(a, b, n, ts)| {
            let w = weight(*a, *b);
            let (Ok(s), Ok(m)) = (
                solve(w, *n, opts),
                solve_parameters(CombDomainSpec::new(w, *n), opts),
            ) else {
                return (None, None, None);
            };
            let agree = max_diff(&s.roots, &m.prevertices_xi)
                .max(max_diff(&s.alternation_points, &m.prevertices_eta))
                .max((s.log_leading - m.log_capacity).abs());
            let scale = s.log_leading.exp();
            let mut identity = 0.0f64;
            for &t in ts {
                match m.eval_w(Complex64::new(t, 0.0)) {
                    Ok(v) => {
                        identity = identity
                            .max((v.re.exp() - s.evaluate_weighted(t).abs() * scale).abs() / scale)
                    }
                    Err(_) => return (Some(agree), None, None),
                }
            }
            let mirror = solve(w.mirrored(), *n, opts).ok().map(|r| {
                let reflected: Vec<f64> = r.roots.iter().rev().map(|x| 1.0 - x).collect();
                max_diff(&s.roots, &reflected).max((s.log_leading - r.log_leading).abs())
            });
            (Some(agree), Some(identity), mirror)
        })
        .collect();

    let oracle: Vec<Option<f64>> = small
        .par_iter()
        .map(|&(a, b, n)| {
            let w = weight(a, b);
            let l = solve(w, n, opts).ok()?.deviation;
            let r = minimax_1d(w, n, 2000).ok()?;
            // Distance outside the bracket, plus its width, relative to L.
            let outside = (r.deviation_lower - l).max(l - r.deviation_upper).max(0.0);
            Some((outside + r.width()) / l)
        })
        .collect();

    let triangle: Vec<Option<f64>> = indices
        .par_iter()
        .map(|&idx| {
            let rep = BallExtremal::build(idx, opts)
                .ok()?
                .verify_on_triangle(400)
                .ok()?;
            if !rep.regions_ok() {
                return Some(f64::INFINITY);
            }
            Some((rep.max_abs - 1.0).max(0.0).max(rep.line_residual))
        })
        .collect();

    let limits: Vec<Option<f64>> = profiles
        .iter()
        .map(|p| {
            let profile = AsymptoticProfile::new(p[0], p[1], p[2], p[3]).ok()?;
            let lim = limit_constant(&profile).ok()?;
            Some((lim.value().ln() + c_star(p[0] - p[1], p[2] - p[3]).ok()?).abs())
        })
        .collect();

    let checks: Vec<CheckRecord> = [
        Check {
            name: "remez_vs_newton",
            tolerance: 1e-8,
            errors: cross.iter().map(|c| c.0).collect(),
        },
        Check {
            name: "map_identity",
            tolerance: 1e-10,
            errors: cross.iter().map(|c| c.1).collect(),
        },
        Check {
            name: "mirror",
            tolerance: 1e-10,
            errors: cross.iter().map(|c| c.2).collect(),
        },
        Check {
            name: "oracle_1d",
            tolerance: 1e-3,
            errors: oracle,
        },
        Check {
            name: "triangle_verifier",
            tolerance: 1e-9,
            errors: triangle,
        },
        Check {
            name: "limit_product",
            tolerance: 1e-12,
            errors: limits,
        },
    ]
    .into_iter()
    .map(Check::record)
    .collect();
    SuiteRecord {
        seed,
        cases,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
