//! Conformal maps onto comb domains.
//!
//! `Ω_n(α, β)` is the strip `-βπ < Im w < (α+n)π` with the horizontal slits
//! `{Im w = jπ, Re w ≤ 0}`, `j = 0..=n`, removed. The map from the upper
//! half-plane with `0 ↦ ∞_0`, `1 ↦ ∞_{n+1}`, `∞ ↦ +∞` is
//!
//! ```text
//! w(z) = C_n - iβπ + α Log z + β Log(z - 1) + Σ_j Log(z - ξ_j)
//! ```
//!
//! with principal logarithms. Its critical points `η_k` are the preimages of
//! the slit tips `(n-k)πi`, and the tip condition `Re w(η_k) = 0` for all `k`
//! determines `ξ` and `C_n`. On `[0, 1]`, `e^w` is the normalized weighted
//! uniform Jacobi polynomial.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Float;

use crate::jacobi::{self, SolveOptions, UniformJacobiSolution};
use crate::logpoly::{critical_points, ln_abs_weighted, log_derivative};
use crate::{Error, WeightParams};

/// The domain `Ω_n(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombDomainSpec {
    pub weight: WeightParams,
    pub n: usize,
}

impl CombDomainSpec {
    pub fn new(weight: WeightParams, n: usize) -> Self {
        Self { weight, n }
    }

    /// `-βπ`.
    pub fn lower_bound(&self) -> f64 {
        -self.weight.beta() * PI
    }

    /// `(α + n)π`.
    pub fn upper_bound(&self) -> f64 {
        (self.weight.alpha() + self.n as f64) * PI
    }

    /// `0, π, …, nπ`.
    pub fn slit_heights(&self) -> Vec<f64> {
        (0..=self.n).map(|j| j as f64 * PI).collect()
    }
}

/// How the map parameters were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapOrigin {
    /// Copied from a Remez solution.
    Remez,
    /// Newton on the slit-tip conditions from a Chebyshev start.
    Newton,
    /// Newton restarted from Remez roots after the independent start failed.
    /// The two solvers are then no longer independent.
    NewtonSeededFromRemez,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombMapData {
    pub spec: CombDomainSpec,
    /// Preimages of the left infinities `∞_1 … ∞_n`.
    pub prevertices_xi: Vec<f64>,
    /// Preimages of the slit tips `nπi, (n-1)πi, …, 0`.
    pub prevertices_eta: Vec<f64>,
    /// `C_n(α, β)`.
    pub log_capacity: f64,
    /// `-βπ`, the constant making `w` real on `(ξ_n, 1)`.
    pub branch_shift: f64,
    /// `max_k |Re w(η_k)|` at the returned parameters.
    pub residual: f64,
    pub iterations: usize,
    pub origin: MapOrigin,
}

impl CombMapData {
    /// Reads the map off a uniform Jacobi solution: `ξ` are its roots, `η` its
    /// alternation points, `C_n = -ln L`.
    pub fn from_jacobi(sol: &UniformJacobiSolution) -> Self {
        let spec = CombDomainSpec::new(sol.weight, sol.degree);
        let mut map = Self {
            spec,
            prevertices_xi: sol.roots.clone(),
            prevertices_eta: sol.alternation_points.clone(),
            log_capacity: sol.log_leading,
            branch_shift: spec.lower_bound(),
            residual: 0.0,
            iterations: sol.iterations,
            origin: MapOrigin::Remez,
        };
        map.residual = map.tip_residuals().iter().fold(0.0, |m, r| m.max(r.abs()));
        map
    }

    fn weight(&self) -> &WeightParams {
        &self.spec.weight
    }

    /// `Re w(η_k)` for each tip, computed on the real axis.
    pub fn tip_residuals(&self) -> Vec<f64> {
        self.prevertices_eta
            .iter()
            .map(|&t| ln_abs_weighted(self.weight(), t, &self.prevertices_xi).1 + self.log_capacity)
            .collect()
    }

    /// `w(z)` for `z` in the closed upper half-plane.
    pub fn eval_w(&self, z: Complex64) -> Result<Complex64, Error> {
        if !z.re.is_finite() || !z.im.is_finite() || z.im < 0.0 {
            return Err(Error::InvalidParameter {
                name: "z",
                value: z.im,
                reason: "point must lie in the closed upper half-plane",
            });
        }
        let on_axis = z.im == 0.0;
        let (a, b) = (self.weight().alpha(), self.weight().beta());
        let hits_log = on_axis
            && ((z.re == 0.0 && a > 0.0)
                || (z.re == 1.0 && b > 0.0)
                || self.prevertices_xi.contains(&z.re));
        if hits_log {
            return Err(Error::Singular { re: z.re, im: z.im });
        }
        // Add a signed zero so boundary points take their limit from above.
        let z = Complex64::new(z.re, if on_axis { 0.0 } else { z.im });
        let mut w = Complex64::new(self.log_capacity, self.branch_shift);
        if a != 0.0 {
            w += a * z.ln();
        }
        if b != 0.0 {
            w += b * (z - 1.0).ln();
        }
        for &xi in &self.prevertices_xi {
            w += (z - xi).ln();
        }
        Ok(w)
    }

    /// `w'(z) = α/z + β/(z-1) + Σ 1/(z - ξ_j)`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.weight().alpha(), self.weight().beta());
        let mut d = Complex64::new(0.0, 0.0);
        if a != 0.0 {
            d += a / z;
        }
        if b != 0.0 {
            d += b / (z - 1.0);
        }
        for &xi in &self.prevertices_xi {
            d += 1.0 / (z - xi);
        }
        d
    }

    /// Polylines for plotting: the strip edges and slits of `Ω_n`, the image
    /// of each segment of `[0, 1]` between prevertices, and the graph of
    /// `t ↦ t^α (1-t)^β J_n(t) = ±e^{Re w(t)}`.
    pub fn export_geometry(&self, samples_per_side: usize) -> Result<Vec<Polyline>, Error> {
        if samples_per_side < 2 {
            return Err(Error::GridTooSmall {
                grid: samples_per_side,
                min: 2,
            });
        }
        let s = samples_per_side;
        let mut breaks = Vec::with_capacity(self.prevertices_xi.len() + 2);
        breaks.push(0.0);
        breaks.extend_from_slice(&self.prevertices_xi);
        breaks.push(1.0);

        let mut images = Vec::new();
        let mut u_min = -2.0 * PI;
        for (seg, pair) in breaks.windows(2).enumerate() {
            let (lo, hi) = (pair[0], pair[1]);
            let mut points = Vec::with_capacity(s);
            for i in 0..s {
                let x = 0.5 * (1.0 - ((i as f64 + 0.5) * PI / s as f64).cos());
                let w = self.eval_w(Complex64::new(lo + (hi - lo) * x, 0.0))?;
                u_min = u_min.min(w.re);
                points.push([w.re, w.im]);
            }
            images.push(Polyline {
                label: format!("boundary_{seg}"),
                points,
            });
        }

        let extent = -u_min;
        let mut out = Vec::new();
        let lower = self.spec.lower_bound();
        let upper = self.spec.upper_bound();
        out.push(Polyline::new(
            "strip_lower",
            [[-extent, lower], [extent, lower]],
        ));
        out.push(Polyline::new(
            "strip_upper",
            [[-extent, upper], [extent, upper]],
        ));
        for (j, h) in self.spec.slit_heights().into_iter().enumerate() {
            out.push(Polyline {
                label: format!("slit_{j}"),
                points: alloc::vec![[-extent, h], [0.0, h]],
            });
        }
        out.extend(images);

        let total = s * (self.spec.n + 1);
        let graph = (0..=total)
            .map(|i| {
                let t = i as f64 / total as f64;
                [t, self.weighted_value(t)]
            })
            .collect();
        out.push(Polyline {
            label: String::from("graph"),
            points: graph,
        });
        Ok(out)
    }

    /// `e^{w(t)}` for `t ∈ [0, 1]`, real; zero at the logarithmic poles.
    pub fn weighted_value(&self, t: f64) -> f64 {
        match self.eval_w(Complex64::new(t, 0.0)) {
            Ok(w) => {
                let k = (w.im / PI).round() as i64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * w.re.exp()
            }
            Err(_) => 0.0,
        }
    }
}

/// A labelled polyline in the `w = u + iv` plane (or `(t, value)` for the
/// graph).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub label: String,
    pub points: Vec<[f64; 2]>,
}

impl Polyline {
    fn new<const N: usize>(label: &str, points: [[f64; 2]; N]) -> Self {
        Self {
            label: String::from(label),
            points: points.to_vec(),
        }
    }
}

/// Solves for `ξ` and `C_n` by Newton's method on the slit-tip conditions
/// `Re w(η_k) = 0`, without using the Remez solver.
///
/// The tips `η_k` are recomputed at each iterate as roots of the numerator of
/// `w'`. Because they are critical points of `Re w`, their motion does not
/// enter the Jacobian: `∂R_k/∂ξ_j = -1/(η_k - ξ_j)`, `∂R_k/∂C = 1`.
pub fn solve_parameters(spec: CombDomainSpec, opts: SolveOptions) -> Result<CombMapData, Error> {
    opts.validate()?;
    if spec.n == 0 {
        let sol = jacobi::solve(spec.weight, 0, opts)?;
        let mut map = CombMapData::from_jacobi(&sol);
        map.origin = MapOrigin::Newton;
        return Ok(map);
    }
    newton(spec, chebyshev_seed(&spec), opts, MapOrigin::Newton)
}

/// [`solve_parameters`], restarting from the Remez roots if the independent
/// start fails. The returned `origin` records which path succeeded.
pub fn solve_parameters_with_fallback(
    spec: CombDomainSpec,
    opts: SolveOptions,
) -> Result<CombMapData, Error> {
    match solve_parameters(spec, opts) {
        Ok(map) => Ok(map),
        Err(e @ Error::InvalidParameter { .. }) => Err(e),
        Err(_) => {
            let sol = jacobi::solve(spec.weight, spec.n, opts)?;
            newton(spec, sol.roots, opts, MapOrigin::NewtonSeededFromRemez)
        }
    }
}

/// Roots of the degree-`n` Chebyshev polynomial on `[x1, x2]`, where `x1, x2`
/// bound the limiting root distribution for the rescaled weight.
fn chebyshev_seed(spec: &CombDomainSpec) -> Vec<f64> {
    let n = spec.n;
    let total = spec.weight.alpha() + spec.weight.beta() + n as f64;
    let (x1, x2) =
        crate::asymptotics::solve_x(spec.weight.alpha() / total, spec.weight.beta() / total)
            .unwrap_or((0.0, 1.0));
    (0..n)
        .map(|j| {
            let c = ((2 * (n - j) - 1) as f64 * PI / (2 * n) as f64).cos();
            x1 + (x2 - x1) * 0.5 * (1.0 + c)
        })
        .collect()
}

fn newton(
    spec: CombDomainSpec,
    mut xi: Vec<f64>,
    opts: SolveOptions,
    origin: MapOrigin,
) -> Result<CombMapData, Error> {
    let weight = spec.weight;
    let n = spec.n;
    let residuals = |xi: &[f64], eta: &[f64], c: f64| -> Vec<f64> {
        eta.iter()
            .map(|&t| ln_abs_weighted(&weight, t, xi).1 + c)
            .collect()
    };
    let norm = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let max_abs = |r: &[f64]| r.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut eta = slit_tips(&weight, &xi);
    let mut c = -eta
        .iter()
        .map(|&t| ln_abs_weighted(&weight, t, &xi).1)
        .sum::<f64>()
        / (n + 1) as f64;
    let mut r = residuals(&xi, &eta, c);

    for iter in 0..=opts.max_iter {
        if max_abs(&r) <= opts.tol {
            return Ok(CombMapData {
                spec,
                prevertices_xi: xi,
                prevertices_eta: eta,
                log_capacity: c,
                branch_shift: spec.lower_bound(),
                residual: max_abs(&r),
                iterations: iter,
                origin,
            });
        }
        if iter == opts.max_iter {
            break;
        }
        let jac = DMatrix::from_fn(n + 1, n + 1, |k, j| {
            if j == n {
                1.0
            } else {
                -1.0 / (eta[k] - xi[j])
            }
        });
        let rhs = DVector::from_iterator(n + 1, r.iter().map(|v| -v));
        let Some(step) = jac.lu().solve(&rhs) else {
            return Err(Error::NonConvergence {
                iterations: iter,
                residual: max_abs(&r),
                best: None,
            });
        };

        let current = norm(&r);
        let mut lambda = 1.0;
        let mut ordered_once = false;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = (0..n).map(|j| xi[j] + lambda * step[j]).collect();
            let ordered =
                trial.iter().all(|&x| x > 0.0 && x < 1.0) && trial.windows(2).all(|p| p[0] < p[1]);
            if ordered {
                ordered_once = true;
                let trial_eta = slit_tips(&weight, &trial);
                let trial_c = c + lambda * step[n];
                let trial_r = residuals(&trial, &trial_eta, trial_c);
                if norm(&trial_r) < current {
                    accepted = Some((trial, trial_eta, trial_c, trial_r));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((a, b, cc, rr)) => {
                xi = a;
                eta = b;
                c = cc;
                r = rr;
            }
            None if !ordered_once => {
                return Err(Error::OrderingViolation {
                    iteration: iter + 1,
                })
            }
            None => {
                return Err(Error::NonConvergence {
                    iterations: iter + 1,
                    residual: max_abs(&r),
                    best: None,
                })
            }
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        residual: max_abs(&r),
        best: None,
    })
}

/// Coefficients (ascending) of `∏ (t - r)`.
fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut p = alloc::vec![1.0];
    for &r in roots {
        let mut next = alloc::vec![0.0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= r * c;
        }
        p = next;
    }
    p
}

fn add_scaled(acc: &mut [f64], p: &[f64], scale: f64) {
    for (a, &c) in acc.iter_mut().zip(p) {
        *a += scale * c;
    }
}

/// Numerator of `w'(t) t (t-1) ∏(t - ξ_j)`:
/// `α (t-1) P + β t P + t (t-1) Σ_j P / (t - ξ_j)`, degree `n + 1`, leading
/// coefficient `α + β + n`.
pub(crate) fn derivative_numerator(weight: &WeightParams, xi: &[f64]) -> Vec<f64> {
    let n = xi.len();
    let mut out = alloc::vec![0.0; n + 2];
    add_scaled(
        &mut out,
        &poly_from_roots(&[&[1.0], xi].concat()),
        weight.alpha(),
    );
    add_scaled(
        &mut out,
        &poly_from_roots(&[&[0.0], xi].concat()),
        weight.beta(),
    );
    for j in 0..n {
        let mut others: Vec<f64> = xi
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &x)| x)
            .collect();
        others.push(0.0);
        others.push(1.0);
        add_scaled(&mut out, &poly_from_roots(&others), 1.0);
    }
    out
}

/// The `n + 1` slit-tip prevertices: eigenvalues of the companion matrix of
/// the derivative numerator, each polished by safeguarded Newton inside its
/// gap between poles.
fn slit_tips(weight: &WeightParams, xi: &[f64]) -> Vec<f64> {
    let coeffs = derivative_numerator(weight, xi);
    let m = coeffs.len() - 1;
    let lead = coeffs[m];
    let mut seeds: Vec<f64> = if m == 0 || lead == 0.0 {
        Vec::new()
    } else {
        let companion = DMatrix::from_fn(m, m, |i, j| {
            if j == m - 1 {
                -coeffs[i] / lead
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        companion
            .complex_eigenvalues()
            .iter()
            .map(|e| e.re)
            .collect()
    };
    seeds.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    if seeds.len() != xi.len() + 1 {
        return critical_points(weight, xi, None);
    }
    critical_points(weight, xi, Some(&seeds))
}

/// Largest `|w'(η)|` over the interior tips, relative to the size of the
/// partial-fraction terms. Pinned endpoints (`α = 0` or `β = 0`) are skipped.
pub fn critical_point_defect(map: &CombMapData) -> f64 {
    let w = &map.spec.weight;
    map.prevertices_eta
        .iter()
        .filter(|&&t| t > 0.0 && t < 1.0)
        .map(|&t| {
            let d = log_derivative(w, t, &map.prevertices_xi).0;
            let scale = crate::logpoly::log_derivative_scale(w, t, &map.prevertices_xi);
            d.abs() / scale
        })
        .fold(0.0, f64::max)
}
