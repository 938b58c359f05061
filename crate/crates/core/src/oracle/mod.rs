//! Brute-force minimax by linear programming on a grid.
//!
//! Slow and low-accuracy on purpose: nothing here shares code with the
//! Remez or Newton solvers, so agreement is evidence. Every result is a
//! bracket `[deviation_lower, deviation_upper]`:
//!
//! * the lower end is the optimum of the discretized problem (the true
//!   problem has more constraints, so its value is at least as large),
//!   certified by the dual objective;
//! * the upper end is the sup norm of the returned polynomial, sampled on a
//!   finer grid and polished locally.

pub mod lp;

use alloc::vec::Vec;

use num_traits::Float;

use crate::ball::MonomialIndex;
use crate::math::scaled_ln;
use crate::roots::golden_max;
use crate::{Error, WeightParams};

use lp::DenseLp;

/// Largest degree accepted by [`minimax_1d`]; monomial conditioning limits it.
pub const MAX_DEGREE_1D: usize = 10;
/// Largest `l1 + l2` accepted by [`minimax_triangle`].
pub const MAX_DEGREE_TRIANGLE: usize = 3;
/// Smallest number of sample points on the triangle.
pub const MIN_TRIANGLE_POINTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub deviation_lower: f64,
    pub deviation_upper: f64,
    /// Coefficients of the non-leading monomials, lowest first. In 1-D the
    /// `j`-th entry multiplies `t^j`; on the triangle the order is that of
    /// [`triangle_exponents`].
    pub coefficients: Vec<f64>,
    /// Number of sample points in the LP.
    pub grid_size: usize,
}

impl OracleResult {
    pub fn brackets(&self, value: f64, slack: f64) -> bool {
        self.deviation_lower - slack <= value && value <= self.deviation_upper + slack
    }

    pub fn width(&self) -> f64 {
        self.deviation_upper - self.deviation_lower
    }
}

/// Builds `min h` subject to `|w_i (lead_i + Σ_j c_j φ_j(x_i))| ≤ h`.
/// `rows` yields `(w_i, lead_i, φ(x_i))` per sample.
fn chebyshev_lp<'a>(samples: impl Iterator<Item = (f64, f64, &'a [f64])>, nvar: usize) -> DenseLp {
    let p = nvar + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (w, lead, phi) in samples {
        for s in [1.0, -1.0] {
            a.extend(phi.iter().map(|&v| s * w * v));
            a.push(-1.0);
            b.push(-s * w * lead);
        }
    }
    let mut c = alloc::vec![0.0; p];
    c[nvar] = 1.0;
    DenseLp { a, b, c }
}

fn horner(coeffs: &[f64], n: usize, t: f64) -> f64 {
    // t^n + Σ c_j t^j
    let mut v = 1.0;
    for j in (0..n).rev() {
        v = v * t + coeffs[j];
    }
    v
}

/// Grid LP for `min sup_{[0,1]} t^α (1-t)^β |t^n + Σ_{j<n} c_j t^j|`.
///
/// `grid` equispaced points including both ends; it must be at least
/// `10 (n + 1)`.
pub fn minimax_1d(weight: WeightParams, n: usize, grid: usize) -> Result<OracleResult, Error> {
    if n > MAX_DEGREE_1D {
        return Err(Error::DegreeGuard {
            degree: n,
            max: MAX_DEGREE_1D,
        });
    }
    let min = 10 * (n + 1);
    if grid < min {
        return Err(Error::GridTooSmall { grid, min });
    }
    let nodes: Vec<f64> = (0..grid).map(|i| i as f64 / (grid - 1) as f64).collect();
    let phis: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&t| (0..n).map(|j| t.powi(j as i32)).collect())
        .collect();
    let lp = chebyshev_lp(
        nodes
            .iter()
            .zip(&phis)
            .map(|(&t, phi)| (weight.eval(t), t.powi(n as i32), phi.as_slice())),
        n,
    );
    let sol = lp.solve()?;
    let coeffs = sol.x[..n].to_vec();

    let g = |t: f64| (weight.eval(t) * horner(&coeffs, n, t)).abs();
    let fine = 10 * grid;
    let values: Vec<f64> = (0..=fine).map(|i| g(i as f64 / fine as f64)).collect();
    let coarse_max = values.iter().fold(0.0f64, |s, &v| s.max(v));
    let mut upper = coarse_max;
    let h = 1.0 / fine as f64;
    for i in 0..=fine {
        let left = if i > 0 {
            values[i - 1]
        } else {
            f64::NEG_INFINITY
        };
        let right = if i < fine {
            values[i + 1]
        } else {
            f64::NEG_INFINITY
        };
        if values[i] >= left && values[i] >= right && values[i] >= 0.5 * coarse_max {
            let a = (i as f64 - 1.0).max(0.0) * h;
            let b = ((i + 1) as f64 * h).min(1.0);
            upper = upper.max(golden_max(g, a, b, 1e-13).1);
        }
    }
    Ok(OracleResult {
        deviation_lower: sol.dual_objective,
        deviation_upper: upper,
        coefficients: coeffs,
        grid_size: grid,
    })
}

/// Exponents `(j1, j2)` with `j1 + j2 < m`, ordered by total degree, then by
/// `j1` descending.
pub fn triangle_exponents(m: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 0..m as u32 {
        for j1 in (0..=d).rev() {
            out.push((j1, d - j1));
        }
    }
    out
}

struct TrianglePoly {
    alpha: f64,
    beta: f64,
    lead: (u32, u32),
    exps: Vec<(u32, u32)>,
    coeffs: Vec<f64>,
}

impl TrianglePoly {
    fn abs_value(&self, t1: f64, t2: f64) -> f64 {
        let mut p = t1.powi(self.lead.0 as i32) * t2.powi(self.lead.1 as i32);
        for (&(j1, j2), &c) in self.exps.iter().zip(&self.coeffs) {
            p += c * t1.powi(j1 as i32) * t2.powi(j2 as i32);
        }
        (scaled_ln(self.alpha, t1) + scaled_ln(self.beta, t2)).exp() * p.abs()
    }
}

fn project_to_triangle(mut t1: f64, mut t2: f64) -> (f64, f64) {
    t1 = t1.max(0.0);
    t2 = t2.max(0.0);
    let s = t1 + t2;
    if s > 1.0 {
        t1 /= s;
        t2 /= s;
    }
    (t1, t2)
}

/// Compass search for a local maximum of `f` on the triangle.
fn compass_max(f: impl Fn(f64, f64) -> f64, start: (f64, f64), step: f64) -> f64 {
    const DIRS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
        (1.0, 1.0),
        (-1.0, -1.0),
    ];
    let (mut x, mut y) = start;
    let mut best = f(x, y);
    let mut h = step;
    while h > 1e-13 {
        let mut moved = false;
        for (dx, dy) in DIRS {
            let (u, v) = project_to_triangle(x + h * dx, y + h * dy);
            let val = f(u, v);
            if val > best {
                best = val;
                x = u;
                y = v;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    best
}

/// Grid LP for the least weighted deviation on the triangle
/// `{t1, t2 ≥ 0, t1 + t2 ≤ 1}` with weight `t1^α t2^β` and
/// `P = t1^l1 t2^l2 + Σ_{j1+j2 < m} a_{j1 j2} t1^j1 t2^j2`, real coefficients.
///
/// `grid` is the number of subdivisions per side; the samples are
/// `(i/grid, j/grid)` with `i + j ≤ grid`.
pub fn minimax_triangle(index: &MonomialIndex, grid: usize) -> Result<OracleResult, Error> {
    let idx = index.canonicalize();
    let weight = index.weight();
    let m = index.reduced_degree();
    if m > MAX_DEGREE_TRIANGLE {
        return Err(Error::DegreeGuard {
            degree: m,
            max: MAX_DEGREE_TRIANGLE,
        });
    }
    let points = (grid + 1) * (grid + 2) / 2;
    if points < MIN_TRIANGLE_POINTS {
        // Smallest N with (N+1)(N+2)/2 ≥ 1000.
        return Err(Error::GridTooSmall { grid, min: 44 });
    }
    let exps = triangle_exponents(m);
    let mut poly = TrianglePoly {
        alpha: weight.alpha(),
        beta: weight.beta(),
        lead: (idx.l1, idx.l2),
        exps,
        coeffs: Vec::new(),
    };

    let mut samples = Vec::with_capacity(points);
    for i in 0..=grid {
        for j in 0..=grid - i {
            let (t1, t2) = (i as f64 / grid as f64, j as f64 / grid as f64);
            let w = (scaled_ln(poly.alpha, t1) + scaled_ln(poly.beta, t2)).exp();
            let lead = t1.powi(idx.l1 as i32) * t2.powi(idx.l2 as i32);
            let phi: Vec<f64> = poly
                .exps
                .iter()
                .map(|&(j1, j2)| t1.powi(j1 as i32) * t2.powi(j2 as i32))
                .collect();
            samples.push((w, lead, phi));
        }
    }
    let nvar = poly.exps.len();
    let lp = chebyshev_lp(
        samples.iter().map(|(w, l, phi)| (*w, *l, phi.as_slice())),
        nvar,
    );
    let sol = lp.solve()?;
    poly.coeffs = sol.x[..nvar].to_vec();

    // Finer grid, then polish the largest local maxima.
    let fine = 4 * grid;
    let stride = fine + 1;
    let at = |i: usize, j: usize| poly.abs_value(i as f64 / fine as f64, j as f64 / fine as f64);
    let mut vals = alloc::vec![f64::NEG_INFINITY; stride * stride];
    let mut upper = 0.0f64;
    for i in 0..=fine {
        for j in 0..=fine - i {
            let v = at(i, j);
            vals[i * stride + j] = v;
            upper = upper.max(v);
        }
    }
    let mut candidates = Vec::new();
    for i in 0..=fine {
        for j in 0..=fine - i {
            let v = vals[i * stride + j];
            if v < 0.5 * upper {
                continue;
            }
            let neighbours = [
                (i.wrapping_sub(1), j),
                (i + 1, j),
                (i, j.wrapping_sub(1)),
                (i, j + 1),
                (i + 1, j.wrapping_sub(1)),
                (i.wrapping_sub(1), j + 1),
            ];
            let is_peak = neighbours
                .iter()
                .filter(|&&(a, b)| a <= fine && b <= fine && a + b <= fine)
                .all(|&(a, b)| vals[a * stride + b] <= v);
            if is_peak {
                candidates.push((v, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    for &(_, i, j) in candidates.iter().take(16) {
        let start = (i as f64 / fine as f64, j as f64 / fine as f64);
        let v = compass_max(|a, b| poly.abs_value(a, b), start, 1.0 / fine as f64);
        upper = upper.max(v);
    }
    Ok(OracleResult {
        deviation_lower: sol.dual_objective,
        deviation_upper: upper,
        coefficients: poly.coeffs,
        grid_size: points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: f64, b: f64) -> WeightParams {
        WeightParams::new(a, b).unwrap()
    }

    #[test]
    fn classical_degree_two() {
        let r = minimax_1d(w(0.0, 0.0), 2, 2000).unwrap();
        assert!(r.brackets(0.125, 1e-6), "{r:?}");
        assert!(r.width() < 1e-6);
    }

    #[test]
    fn hand_case() {
        let r = minimax_1d(w(1.0, 0.0), 1, 2000).unwrap();
        let exact = 3.0 - 2.0 * 2f64.sqrt();
        assert!(r.brackets(exact, 1e-6), "{r:?}");
        assert!((r.coefficients[0] + (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-5);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            minimax_1d(w(0.0, 0.0), 2, 29),
            Err(Error::GridTooSmall { min: 30, .. })
        ));
        assert!(matches!(
            minimax_1d(w(0.0, 0.0), 11, 5000),
            Err(Error::DegreeGuard { .. })
        ));
        let idx = MonomialIndex::new(2, 2, 2, 2);
        assert!(matches!(
            minimax_triangle(&idx, 100),
            Err(Error::DegreeGuard { .. })
        ));
        let idx = MonomialIndex::new(1, 1, 0, 0);
        assert!(matches!(
            minimax_triangle(&idx, 43),
            Err(Error::GridTooSmall { .. })
        ));
        assert!(minimax_triangle(&idx, 44).is_ok());
    }

    #[test]
    fn triangle_examples() {
        let r = minimax_triangle(&MonomialIndex::new(1, 1, 0, 0), 100).unwrap();
        assert!(r.brackets(0.5, 1e-9), "{r:?}");
        let r = minimax_triangle(&MonomialIndex::new(1, 0, 1, 0), 100).unwrap();
        assert!(r.brackets(0.5, 1e-12), "{r:?}");
        assert!(r.coefficients.is_empty());
    }

    #[test]
    fn exponent_order() {
        assert_eq!(triangle_exponents(0), Vec::new());
        assert_eq!(triangle_exponents(2), alloc::vec![(0, 0), (1, 0), (0, 1)]);
    }
}
