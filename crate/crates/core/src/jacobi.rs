//! Uniform Jacobi polynomials.
//!
//! For a weight `w(t) = t^α (1-t)^β` and a degree `n`, the uniform Jacobi
//! polynomial `J̃_n(t) = (t - ξ_1)⋯(t - ξ_n)` is the monic polynomial with the
//! least weighted sup-norm `L = sup_{[0,1]} w |J̃_n|`. The weighted error
//! `w J̃_n` equioscillates: it takes the values `(-1)^(n-k) L` at `n + 1`
//! points `η_0 < … < η_n` interlaced with the roots.
//!
//! [`solve`] computes it with a multi-point Remez exchange. The polynomial is
//! never expanded in a basis: each step solves the reference system in
//! Lagrange (barycentric) form, so the levelled error and the interpolant
//! come out in closed form, and everything afterwards is carried as a root
//! product in log-magnitude form.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::logpoly::{critical_points, ln_abs_product, ln_abs_weighted};
use crate::math::log_sum_exp;
use crate::roots::brent;
use crate::{Error, WeightParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative spread allowed between the extremal values `|E(η_k)|`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<(), Error> {
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "tol",
                value: self.tol,
                reason: "tolerance must be positive",
            });
        }
        Ok(())
    }
}

/// A solved uniform Jacobi polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformJacobiSolution {
    pub weight: WeightParams,
    pub degree: usize,
    /// `ξ_1 < … < ξ_n`, all in `(0, 1)`.
    pub roots: Vec<f64>,
    /// `η_0 < … < η_n` in `[0, 1]`, where `|E|` peaks.
    pub alternation_points: Vec<f64>,
    /// `L`, the weighted sup-norm of the monic polynomial.
    pub deviation: f64,
    /// `C_n = -ln L`; the normalized polynomial has leading coefficient `e^{C_n}`.
    pub log_leading: f64,
    /// `max_k |E(η_k)| - min_k |E(η_k)|` for the returned roots.
    pub residual: f64,
    pub iterations: usize,
}

impl UniformJacobiSolution {
    fn from_log_leading(
        weight: WeightParams,
        roots: Vec<f64>,
        alternation_points: Vec<f64>,
        log_leading: f64,
        residual: f64,
        iterations: usize,
    ) -> Self {
        Self {
            weight,
            degree: roots.len(),
            roots,
            alternation_points,
            deviation: (-log_leading).exp(),
            log_leading,
            residual,
            iterations,
        }
    }

    /// `e^{C_n}`, the leading coefficient of the normalized polynomial.
    pub fn leading_coefficient(&self) -> f64 {
        self.log_leading.exp()
    }

    /// `t^α (1-t)^β J̃_n(t)` for `t ∈ [0, 1]`.
    pub fn evaluate_weighted(&self, t: f64) -> f64 {
        let (sign, ln) = ln_abs_weighted(&self.weight, t, &self.roots);
        if sign == 0.0 {
            0.0
        } else {
            sign * ln.exp()
        }
    }

    /// `J̃_n(t) / L`, the normalized polynomial without the weight. Defined on
    /// the whole real line.
    pub fn evaluate_normalized(&self, t: f64) -> f64 {
        let (sign, ln) = ln_abs_product(t, &self.roots);
        if sign == 0.0 {
            0.0
        } else {
            sign * (ln + self.log_leading).exp()
        }
    }

    /// The monic polynomial `J̃_n(t)`.
    pub fn evaluate_monic(&self, t: f64) -> f64 {
        let (sign, ln) = ln_abs_product(t, &self.roots);
        if sign == 0.0 {
            0.0
        } else {
            sign * ln.exp()
        }
    }

    /// Checks ordering, interlacing, the endpoint rules and
    /// `deviation = exp(-log_leading)`. Returns a description of the first
    /// violation.
    pub fn check_invariants(&self) -> Result<(), &'static str> {
        let (roots, eta) = (&self.roots, &self.alternation_points);
        if roots.len() != self.degree || eta.len() != self.degree + 1 {
            return Err("length mismatch");
        }
        if roots.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
            return Err("root outside (0, 1)");
        }
        if eta.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err("alternation point outside [0, 1]");
        }
        for k in 0..self.degree {
            if !(eta[k] < roots[k] && roots[k] < eta[k + 1]) {
                return Err("roots and alternation points do not interlace");
            }
        }
        if self.degree > 0 {
            if (eta[0] == 0.0) != (self.weight.alpha() == 0.0) {
                return Err("eta_0 = 0 must hold exactly when alpha = 0");
            }
            if (eta[self.degree] == 1.0) != (self.weight.beta() == 0.0) {
                return Err("eta_n = 1 must hold exactly when beta = 0");
            }
        }
        if self.deviation != (-self.log_leading).exp() {
            return Err("deviation != exp(-log_leading)");
        }
        if self.deviation.is_nan()
            || self.deviation <= 0.0
            || self.residual.is_nan()
            || self.residual < 0.0
        {
            return Err("deviation must be positive and residual nonnegative");
        }
        Ok(())
    }
}

/// Computes the degree-`n` uniform Jacobi polynomial for `weight`.
///
/// `n = 0` is closed form: `L = α^α β^β / (α+β)^(α+β)` at `t = α/(α+β)`
/// (`t = 1/2` when `α = β = 0`).
pub fn solve(
    weight: WeightParams,
    n: usize,
    opts: SolveOptions,
) -> Result<UniformJacobiSolution, Error> {
    opts.validate()?;
    if n == 0 {
        return Ok(UniformJacobiSolution::from_log_leading(
            weight,
            Vec::new(),
            alloc::vec![weight.peak()],
            -weight.ln_peak_value(),
            0.0,
            0,
        ));
    }
    match remez(weight, opts, arc_reference(&weight, n)) {
        Ok(sol) => Ok(sol),
        Err(first) => match remez(weight, opts, chebyshev_reference(&weight, n)) {
            Ok(sol) => Ok(sol),
            Err(second) => Err(better_failure(first, second)),
        },
    }
}

/// Extrema of a Chebyshev polynomial stretched over `[x1, x2]`, the interval
/// the roots fill as the degree grows with `α/(α+β+n)` and `β/(α+β+n)` held
/// fixed.
fn arc_reference(weight: &WeightParams, n: usize) -> Vec<f64> {
    let total = weight.alpha() + weight.beta() + n as f64;
    let (x1, x2) = crate::asymptotics::solve_x(weight.alpha() / total, weight.beta() / total)
        .unwrap_or((0.0, 1.0));
    let mut eta: Vec<f64> = (0..=n)
        .map(|k| x1 + (x2 - x1) * 0.5 * (1.0 - (k as f64 * PI / n as f64).cos()))
        .collect();
    pin_endpoints(weight, &mut eta);
    eta
}

fn chebyshev_reference(weight: &WeightParams, n: usize) -> Vec<f64> {
    let m = (n + 1) as f64;
    let mut eta: Vec<f64> = (0..=n)
        .map(|k| 0.5 * (1.0 - ((2 * k + 1) as f64 * PI / (2.0 * m)).cos()))
        .collect();
    pin_endpoints(weight, &mut eta);
    eta
}

fn pin_endpoints(weight: &WeightParams, eta: &mut [f64]) {
    let n = eta.len() - 1;
    if weight.alpha() == 0.0 {
        eta[0] = 0.0;
    }
    if weight.beta() == 0.0 {
        eta[n] = 1.0;
    }
}

fn better_failure(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (
            Error::NonConvergence { residual: ra, .. },
            Error::NonConvergence { residual: rb, .. },
        ) => {
            if rb < ra {
                b
            } else {
                a
            }
        }
        (Error::NonConvergence { .. }, _) => a,
        _ => b,
    }
}

fn remez(
    weight: WeightParams,
    opts: SolveOptions,
    mut eta: Vec<f64>,
) -> Result<UniformJacobiSolution, Error> {
    let mut best: Option<UniformJacobiSolution> = None;
    for iter in 1..=opts.max_iter {
        let Some(roots) = levelled_roots(&weight, &eta) else {
            break;
        };
        let next = critical_points(&weight, &roots, Some(&eta));
        let logs: Vec<f64> = next
            .iter()
            .map(|&t| ln_abs_weighted(&weight, t, &roots).1)
            .collect();
        let ln_max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ln_min = logs.iter().copied().fold(f64::INFINITY, f64::min);
        if !ln_max.is_finite() || !ln_min.is_finite() {
            break;
        }
        let deviation = ln_max.exp();
        let residual = deviation - ln_min.exp();
        let candidate = UniformJacobiSolution::from_log_leading(
            weight,
            roots,
            next.clone(),
            -ln_max,
            residual,
            iter,
        );
        let converged = residual <= opts.tol * deviation;
        if best
            .as_ref()
            .is_none_or(|b| residual / deviation < b.residual / b.deviation)
        {
            best = Some(candidate);
        }
        if converged {
            return Ok(best.unwrap());
        }
        eta = next;
    }
    let residual = best.as_ref().map_or(f64::INFINITY, |b| b.residual);
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        residual,
        best: best.map(Box::new),
    })
}

/// Solves the reference system on `eta`: the monic degree-`n` polynomial `p`
/// with `w(η_k) p(η_k) = (-1)^(n-k) h`. Returns the roots of `p`, one in each
/// gap `(η_{k-1}, η_k)`.
///
/// With barycentric weights `λ_k = 1/∏_{j≠k}(η_k - η_j)`, the leading
/// coefficient of the interpolant of values `y_k` is `Σ λ_k y_k`; setting it
/// to one gives `h = 1 / Σ_k |λ_k| / w(η_k)`.
fn levelled_roots(weight: &WeightParams, eta: &[f64]) -> Option<Vec<f64>> {
    let n = eta.len() - 1;
    let ln_w: Vec<f64> = eta.iter().map(|&t| weight.ln_weight(t)).collect();
    if ln_w.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let ln_lam: Vec<f64> = (0..=n)
        .map(|k| {
            -(0..=n)
                .filter(|&j| j != k)
                .map(|j| (eta[k] - eta[j]).abs().ln())
                .sum::<f64>()
        })
        .collect();
    let g: Vec<f64> = (0..=n).map(|k| ln_lam[k] - ln_w[k]).collect();
    let ln_h = -log_sum_exp(g.iter().copied());
    let shift = ln_lam.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sign = |k: usize| if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
    let node_value = |k: usize| sign(k) * (ln_h - ln_w[k]).exp();

    let p = |x: f64| {
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..=n {
            let d = x - eta[k];
            if d == 0.0 {
                return node_value(k);
            }
            num += (ln_h + g[k] - shift).exp() / d;
            den += sign(k) * (ln_lam[k] - shift).exp() / d;
        }
        num / den
    };

    let mut roots = Vec::with_capacity(n);
    for k in 1..=n {
        let (a, b) = (eta[k - 1], eta[k]);
        let r = brent(p, a, b, node_value(k - 1), node_value(k), 200);
        if !(r > a && r < b) || !r.is_finite() {
            return None;
        }
        roots.push(r);
    }
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn w(a: f64, b: f64) -> WeightParams {
        WeightParams::new(a, b).unwrap()
    }

    #[test]
    fn classical_chebyshev_degree_three() {
        let sol = solve(WeightParams::unit(), 3, SolveOptions::default()).unwrap();
        assert_relative_eq!(sol.deviation, 1.0 / 32.0, max_relative = 1e-12);
        for (j, &xi) in sol.roots.iter().enumerate() {
            let expected = 0.5 * (1.0 + ((2 * (3 - j) - 1) as f64 * PI / 6.0).cos());
            assert!((xi - expected).abs() < 1e-12, "{xi} vs {expected}");
        }
        sol.check_invariants().unwrap();
    }

    #[test]
    fn degree_zero_sqrt_weight() {
        let sol = solve(w(0.5, 0.5), 0, SolveOptions::default()).unwrap();
        assert_relative_eq!(sol.deviation, 0.5, max_relative = 1e-15);
        assert_eq!(sol.alternation_points, [0.5]);
        assert_eq!(sol.iterations, 0);
    }

    #[test]
    fn degree_zero_unit_weight_peaks_mid_interval() {
        let sol = solve(WeightParams::unit(), 0, SolveOptions::default()).unwrap();
        assert_eq!(sol.deviation, 1.0);
        assert_eq!(sol.alternation_points, [0.5]);
    }

    #[test]
    fn hand_case_alpha_one() {
        // t (t - ξ) equioscillates when ξ²/4 = 1 - ξ.
        let s2 = 2f64.sqrt();
        let sol = solve(w(1.0, 0.0), 1, SolveOptions::default()).unwrap();
        assert!((sol.roots[0] - (2.0 * s2 - 2.0)).abs() < 1e-12);
        assert!((sol.deviation - (3.0 - 2.0 * s2)).abs() < 1e-12);
        assert!((sol.alternation_points[0] - (s2 - 1.0)).abs() < 1e-12);
        assert_eq!(sol.alternation_points[1], 1.0);
    }

    #[test]
    fn evaluate_weighted_examples() {
        let sol = solve(WeightParams::unit(), 1, SolveOptions::default()).unwrap();
        assert!((sol.evaluate_weighted(0.0) + 0.5).abs() < 1e-15);
        assert_eq!(sol.evaluate_weighted(sol.roots[0]), 0.0);

        let s2 = 2f64.sqrt();
        let sol = solve(w(1.0, 0.0), 1, SolveOptions::default()).unwrap();
        assert!((sol.evaluate_weighted(1.0) - (3.0 - 2.0 * s2)).abs() < 1e-12);
        assert_eq!(sol.evaluate_weighted(0.0), 0.0);
    }

    #[test]
    fn evaluate_normalized_examples() {
        let sol = solve(WeightParams::unit(), 1, SolveOptions::default()).unwrap();
        assert!((sol.evaluate_normalized(1.0) - 1.0).abs() < 1e-14);
        assert!((sol.evaluate_normalized(0.0) + 1.0).abs() < 1e-14);

        let s2 = 2f64.sqrt();
        let sol = solve(w(1.0, 0.0), 1, SolveOptions::default()).unwrap();
        // (1 - ξ)/L = 1 and -ξ/L = -(2 + 2√2).
        assert_relative_eq!(sol.evaluate_normalized(1.0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            sol.evaluate_normalized(0.0),
            -(2.0 + 2.0 * s2),
            max_relative = 1e-12
        );
        // Off the interval too.
        assert!(sol.evaluate_normalized(-1.0) < 0.0);
    }

    #[test]
    fn figure_case_equioscillates() {
        let sol = solve(w(0.5, 2.0), 2, SolveOptions::default()).unwrap();
        sol.check_invariants().unwrap();
        assert_eq!(sol.alternation_points.len(), 3);
        for (k, &t) in sol.alternation_points.iter().enumerate() {
            let e = sol.evaluate_weighted(t);
            let sign = if (2 - k) % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(e.signum(), sign);
            assert!((e.abs() - sol.deviation).abs() <= 1e-12 * sol.deviation);
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        let opts = SolveOptions {
            tol: 0.0,
            max_iter: 10,
        };
        assert!(matches!(
            solve(WeightParams::unit(), 2, opts),
            Err(Error::InvalidParameter { name: "tol", .. })
        ));
    }

    #[test]
    fn non_convergence_reports_best_iterate() {
        let opts = SolveOptions {
            tol: 1e-300,
            max_iter: 3,
        };
        match solve(w(1.0, 2.0), 4, opts) {
            Err(Error::NonConvergence {
                best: Some(best),
                residual,
                ..
            }) => {
                assert_eq!(best.roots.len(), 4);
                assert_eq!(best.residual, residual);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
