//! Least-deviation polynomials for monomials on the unit ball of C².
//!
//! For `z1^k1 conj(z1)^l1 z2^k2 conj(z2)^l2` with `k1 ≥ l1`, `k2 ≥ l2`, put
//! `α = (k1-l1)/2`, `β = (k2-l2)/2`, `m = l1 + l2` and let `ξ_1 < … < ξ_m` be
//! the roots of the uniform Jacobi polynomial of degree `m` for `t^α (1-t)^β`.
//! The normalized extremal polynomial is
//!
//! ```text
//! T(z1, z2) = e^{C_m} z1^(k1-l1) z2^(k2-l2) J1(|z1|²) (-1)^l2 J2(1 - |z2|²)
//! J1(t) = (t - ξ_1)⋯(t - ξ_l1),   J2(t) = (t - ξ_{l1+1})⋯(t - ξ_m)
//! ```
//!
//! and its deviation is `L = e^{-C_m}`. With `t_i = |z_i|²` the sup-norm on
//! the ball becomes a weighted sup-norm on the triangle
//! `Δ = {t1, t2 ≥ 0, t1 + t2 ≤ 1}`, which [`BallExtremal::verify_on_triangle`]
//! checks region by region.
//!
//! The extremal polynomial is not unique; this is one representative.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::jacobi::{self, SolveOptions, UniformJacobiSolution};
use crate::logpoly::ln_abs_product;
use crate::math::scaled_ln;
use crate::{Error, WeightParams};

/// Exponents of `z1^k1 conj(z1)^l1 z2^k2 conj(z2)^l2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIndex {
    pub k1: u32,
    pub l1: u32,
    pub k2: u32,
    pub l2: u32,
}

impl MonomialIndex {
    pub const fn new(k1: u32, l1: u32, k2: u32, l2: u32) -> Self {
        Self { k1, l1, k2, l2 }
    }

    pub fn total_degree(&self) -> u32 {
        self.k1 + self.l1 + self.k2 + self.l2
    }

    pub fn is_canonical(&self) -> bool {
        self.k1 >= self.l1 && self.k2 >= self.l2
    }

    /// Swaps `(k1, l1)` and/or `(k2, l2)` so that `k1 ≥ l1` and `k2 ≥ l2`.
    /// `Λ` does not change.
    pub fn canonicalize(&self) -> Self {
        let (k1, l1) = if self.k1 >= self.l1 {
            (self.k1, self.l1)
        } else {
            (self.l1, self.k1)
        };
        let (k2, l2) = if self.k2 >= self.l2 {
            (self.k2, self.l2)
        } else {
            (self.l2, self.k2)
        };
        Self { k1, l1, k2, l2 }
    }

    /// `(α, β) = ((k1-l1)/2, (k2-l2)/2)` of the canonical form.
    pub fn weight(&self) -> WeightParams {
        let c = self.canonicalize();
        WeightParams::new(f64::from(c.k1 - c.l1) / 2.0, f64::from(c.k2 - c.l2) / 2.0)
            .expect("half-integer exponents are valid")
    }

    /// `m = l1 + l2` of the canonical form.
    pub fn reduced_degree(&self) -> usize {
        let c = self.canonicalize();
        (c.l1 + c.l2) as usize
    }

    /// Every index with total degree in `1..=max_total`.
    pub fn all_up_to(max_total: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for k1 in 0..=max_total {
            for l1 in 0..=max_total - k1 {
                for k2 in 0..=max_total - k1 - l1 {
                    for l2 in 0..=max_total - k1 - l1 - k2 {
                        let idx = Self::new(k1, l1, k2, l2);
                        if idx.total_degree() >= 1 {
                            out.push(idx);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k1, self.l1, self.k2, self.l2)
    }
}

/// `ln Λ = C_m(α, β)`.
pub fn log_lambda(index: &MonomialIndex, opts: SolveOptions) -> Result<f64, Error> {
    Ok(jacobi::solve(index.weight(), index.reduced_degree(), opts)?.log_leading)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallExtremal {
    /// Canonical index.
    pub index: MonomialIndex,
    /// The index as requested; swapped pairs are evaluated at `conj(z_i)`.
    pub requested: MonomialIndex,
    pub jacobi: UniformJacobiSolution,
    /// The first `split = l1` roots belong to the `|z1|²` factor.
    pub split: usize,
    /// `Λ = e^{C_m}`.
    pub lambda: f64,
    /// `L = 1/Λ`.
    pub deviation: f64,
}

impl BallExtremal {
    pub fn build(index: MonomialIndex, opts: SolveOptions) -> Result<Self, Error> {
        let sol = jacobi::solve(index.weight(), index.reduced_degree(), opts)?;
        Ok(Self::from_solution(index, sol))
    }

    /// Assembles the extremal from an already solved uniform Jacobi
    /// polynomial of the right weight and degree.
    pub fn from_solution(index: MonomialIndex, sol: UniformJacobiSolution) -> Self {
        let canonical = index.canonicalize();
        Self {
            index: canonical,
            requested: index,
            split: canonical.l1 as usize,
            lambda: sol.log_leading.exp(),
            deviation: sol.deviation,
            jacobi: sol,
        }
    }

    pub fn log_lambda(&self) -> f64 {
        self.jacobi.log_leading
    }

    fn alpha(&self) -> f64 {
        self.jacobi.weight.alpha()
    }

    fn beta(&self) -> f64 {
        self.jacobi.weight.beta()
    }

    fn first_roots(&self) -> &[f64] {
        &self.jacobi.roots[..self.split]
    }

    fn second_roots(&self) -> &[f64] {
        &self.jacobi.roots[self.split..]
    }

    fn l2_sign(&self) -> f64 {
        if self.index.l2 % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `T(z1, z2)`. Defined on all of C²; bounded by 1 on the ball.
    pub fn evaluate(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let z1 = if self.requested.k1 < self.requested.l1 {
            z1.conj()
        } else {
            z1
        };
        let z2 = if self.requested.k2 < self.requested.l2 {
            z2.conj()
        } else {
            z2
        };
        let a = self.index.k1 - self.index.l1;
        let b = self.index.k2 - self.index.l2;
        let (r1, r2) = (z1.norm(), z2.norm());
        if (a > 0 && r1 == 0.0) || (b > 0 && r2 == 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        let (s1, ln1) = ln_abs_product(r1 * r1, self.first_roots());
        let (s2, ln2) = ln_abs_product(1.0 - r2 * r2, self.second_roots());
        if s1 == 0.0 || s2 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut ln = self.log_lambda() + ln1 + ln2;
        let mut phase = 0.0;
        if a > 0 {
            ln += f64::from(a) * r1.ln();
            phase += f64::from(a) * z1.arg();
        }
        if b > 0 {
            ln += f64::from(b) * r2.ln();
            phase += f64::from(b) * z2.arg();
        }
        Complex64::from_polar(s1 * s2 * self.l2_sign() * ln.exp(), phase)
    }

    /// `(sign, ln |·|)` of the two triangle factors before normalization:
    /// `t^α J1(t)` and `e^{C} t^β (-1)^l2 J2(1 - t)`.
    fn raw_first(&self, t: f64) -> (f64, f64) {
        let (s, ln) = ln_abs_product(t, self.first_roots());
        (s, scaled_ln(self.alpha(), t) + ln)
    }

    fn raw_second(&self, t: f64) -> (f64, f64) {
        let (s, ln) = ln_abs_product(1.0 - t, self.second_roots());
        (
            s * self.l2_sign(),
            self.log_lambda() + scaled_ln(self.beta(), t) + ln,
        )
    }

    /// `F(t1, t2) = t1^α t2^β P(t1, t2)`, the ball polynomial's modulus
    /// pulled back to the triangle.
    pub fn triangle_value(&self, t1: f64, t2: f64) -> f64 {
        let (s1, a) = self.raw_first(t1);
        let (s2, b) = self.raw_second(t2);
        signed_exp(s1 * s2, a + b)
    }

    /// Samples `F` on the triangle and checks the bound `|F| ≤ 1`, the
    /// diagonal identity, and the monotonicity facts that prove the bound.
    ///
    /// `grid` is the number of subdivisions per side; the samples are
    /// `(i/grid, j/grid)` with `i + j ≤ grid`, plus points on the diagonal at
    /// and around each alternation point.
    pub fn verify_on_triangle(&self, grid: usize) -> Result<TriangleReport, Error> {
        if grid < 2 {
            return Err(Error::GridTooSmall { grid, min: 2 });
        }
        let tol = VERIFY_TOL;
        let eta = self.jacobi.alternation_points[self.split];
        let norm_shift = self.raw_first(eta).1;
        let f1 = |t: f64| {
            let (s, ln) = self.raw_first(t);
            signed_exp(s, ln - norm_shift)
        };
        let f2 = |t: f64| {
            let (s, ln) = self.raw_second(t);
            signed_exp(s, ln + norm_shift)
        };

        let nodes: Vec<f64> = (0..=grid).map(|i| i as f64 / grid as f64).collect();
        let v1: Vec<f64> = nodes.iter().map(|&t| f1(t)).collect();
        let v2: Vec<f64> = nodes.iter().map(|&t| f2(t)).collect();
        let mut violations = Vec::new();

        // Grid maximum: for fixed i the best j ≤ grid - i is a prefix maximum.
        let mut prefix = Vec::with_capacity(grid + 1);
        let mut best = (0.0f64, 0usize);
        for (j, v) in v2.iter().enumerate() {
            if v.abs() > best.0 || j == 0 {
                best = (v.abs(), j);
            }
            prefix.push(best);
        }
        let mut max_abs = -1.0;
        let mut argmax = [0.0, 0.0];
        for i in 0..=grid {
            let (m2, j) = prefix[grid - i];
            let v = v1[i].abs() * m2;
            if v > max_abs {
                max_abs = v;
                argmax = [nodes[i], nodes[j]];
            }
        }
        let m = self.jacobi.degree;
        let width = 1.0 / grid as f64;
        for &e in &self.jacobi.alternation_points {
            for step in -10i32..=10 {
                let t = (e + f64::from(step) * width / 10.0).clamp(0.0, 1.0);
                let v = self.triangle_value(t, 1.0 - t).abs();
                if v > max_abs {
                    max_abs = v;
                    argmax = [t, 1.0 - t];
                }
            }
        }
        if max_abs > 1.0 + tol {
            violations.push(RegionViolation::new(
                Region::Bound,
                argmax,
                max_abs,
                "|F| exceeds 1",
            ));
        }

        // Diagonal identity: factor product against the weighted 1-D polynomial.
        let mut line_residual = 0.0f64;
        let mut line_witness = [0.0, 1.0];
        for &t in &nodes {
            let by_factors = f1(t) * f2(1.0 - t);
            let direct = self.l2_sign() * self.jacobi.evaluate_weighted(t) * self.lambda;
            let d = (by_factors - direct).abs();
            if d > line_residual {
                line_residual = d;
                line_witness = [t, 1.0 - t];
            }
        }
        if line_residual > LINE_TOL {
            violations.push(RegionViolation::new(
                Region::Diagonal,
                line_witness,
                line_residual,
                "F(t, 1-t) differs from the weighted 1-D polynomial",
            ));
        }

        let at_tip_1 = f1(eta);
        let at_tip_2 = f2(1.0 - eta);
        let normalization_ok = (at_tip_1 - 1.0).abs() <= tol && (at_tip_2 - 1.0).abs() <= tol;
        if !normalization_ok {
            violations.push(RegionViolation::new(
                Region::Normalization,
                [eta, 1.0 - eta],
                at_tip_2,
                "f1(eta) = f2(1 - eta) = 1 fails",
            ));
        }

        // Corner box: t1 ≤ η, t2 ≤ 1 - η.
        let mut box_ok = true;
        for (i, &t) in nodes.iter().enumerate() {
            if t <= eta && v1[i].abs() > 1.0 + tol {
                box_ok = false;
                violations.push(RegionViolation::new(
                    Region::Box,
                    [t, 0.0],
                    v1[i],
                    "|f1| > 1 below the tip",
                ));
                break;
            }
        }
        for (j, &t) in nodes.iter().enumerate() {
            if t <= 1.0 - eta && v2[j].abs() > 1.0 + tol {
                box_ok = false;
                violations.push(RegionViolation::new(
                    Region::Box,
                    [0.0, t],
                    v2[j],
                    "|f2| > 1 below the tip",
                ));
                break;
            }
        }

        let first_tail_ok = monotone_from(
            &nodes,
            &v1,
            eta,
            tol,
            Region::FirstTail,
            &mut violations,
            false,
        );
        let second_tail_ok = monotone_from(
            &nodes,
            &v2,
            1.0 - eta,
            tol,
            Region::SecondTail,
            &mut violations,
            true,
        );

        let mut alternation_ok = true;
        for (k, &e) in self.jacobi.alternation_points.iter().enumerate() {
            // (-1)^l2 F(η_k, 1 - η_k) = t^α (1-t)^β J_m(η_k) = (-1)^(m-k).
            let v = self.l2_sign() * self.triangle_value(e, 1.0 - e);
            let expected = if (m - k) % 2 == 0 { 1.0 } else { -1.0 };
            if (v - expected).abs() > tol {
                alternation_ok = false;
                violations.push(RegionViolation::new(
                    Region::Alternation,
                    [e, 1.0 - e],
                    v,
                    "diagonal value at an alternation point is not +-1 with the right sign",
                ));
            }
        }

        Ok(TriangleReport {
            grid,
            max_abs,
            argmax,
            line_residual,
            regions: RegionFlags {
                bound: max_abs <= 1.0 + tol,
                diagonal: line_residual <= LINE_TOL,
                normalization: normalization_ok,
                corner_box: box_ok,
                first_tail: first_tail_ok,
                second_tail: second_tail_ok,
                alternation: alternation_ok,
            },
            violations,
        })
    }
}

/// Tolerance for the bound, normalization and alternation checks.
pub const VERIFY_TOL: f64 = 1e-9;
/// Tolerance for the diagonal identity, which holds exactly.
pub const LINE_TOL: f64 = 1e-10;

fn signed_exp(sign: f64, ln: f64) -> f64 {
    if sign == 0.0 {
        0.0
    } else {
        sign * ln.exp()
    }
}

/// Checks `values` nondecreasing and `≥ 1` on the nodes `≥ start`.
fn monotone_from(
    nodes: &[f64],
    values: &[f64],
    start: f64,
    tol: f64,
    region: Region,
    violations: &mut Vec<RegionViolation>,
    second: bool,
) -> bool {
    let mut prev: Option<f64> = None;
    for (i, &t) in nodes.iter().enumerate() {
        if t < start {
            continue;
        }
        let v = values[i];
        let point = if second { [0.0, t] } else { [t, 0.0] };
        if v < 1.0 - tol {
            violations.push(RegionViolation::new(
                region,
                point,
                v,
                "factor drops below 1 past the tip",
            ));
            return false;
        }
        if let Some(p) = prev {
            if v < p - tol * p.abs() {
                violations.push(RegionViolation::new(
                    region,
                    point,
                    v,
                    "factor decreases past the tip",
                ));
                return false;
            }
        }
        prev = Some(v);
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `|F| ≤ 1` on the whole triangle.
    Bound,
    /// `F(t, 1-t) = (-1)^l2 t^α (1-t)^β J_m(t)`.
    Diagonal,
    /// `f1(η_l1) = f2(1 - η_l1) = 1`.
    Normalization,
    /// `t1 ≤ η_l1`, `t2 ≤ 1 - η_l1`.
    Box,
    /// `t1 ≥ η_l1`, where `f1` must be nondecreasing.
    FirstTail,
    /// `t2 ≥ 1 - η_l1`, where `f2` must be nondecreasing.
    SecondTail,
    /// Signs of `F` at the diagonal alternation points.
    Alternation,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::Bound => "bound",
            Region::Diagonal => "diagonal",
            Region::Normalization => "normalization",
            Region::Box => "box",
            Region::FirstTail => "first_tail",
            Region::SecondTail => "second_tail",
            Region::Alternation => "alternation",
        };
        f.write_str(s)
    }
}

/// A failed check with the point where it failed.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{region} check failed at ({}, {}): {detail} (value {value})", point[0], point[1])]
pub struct RegionViolation {
    pub region: Region,
    pub point: [f64; 2],
    pub value: f64,
    pub detail: &'static str,
}

impl RegionViolation {
    fn new(region: Region, point: [f64; 2], value: f64, detail: &'static str) -> Self {
        Self {
            region,
            point,
            value,
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionFlags {
    pub bound: bool,
    pub diagonal: bool,
    pub normalization: bool,
    pub corner_box: bool,
    pub first_tail: bool,
    pub second_tail: bool,
    pub alternation: bool,
}

impl RegionFlags {
    pub fn all(&self) -> bool {
        self.bound
            && self.diagonal
            && self.normalization
            && self.corner_box
            && self.first_tail
            && self.second_tail
            && self.alternation
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleReport {
    pub grid: usize,
    pub max_abs: f64,
    /// `(t1, t2)` where `max_abs` was found.
    pub argmax: [f64; 2],
    pub line_residual: f64,
    pub regions: RegionFlags,
    pub violations: Vec<RegionViolation>,
}

impl TriangleReport {
    pub fn regions_ok(&self) -> bool {
        self.regions.all() && self.violations.is_empty()
    }

    /// The first violation, if any.
    pub fn check(&self) -> Result<(), RegionViolation> {
        match self.violations.first() {
            Some(v) => Err(v.clone()),
            None => Ok(()),
        }
    }
}
