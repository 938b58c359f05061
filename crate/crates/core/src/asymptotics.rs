//! Large-degree limits.
//!
//! Rescaled by `2/n`, the comb domains of the ball problem converge to a
//! strip `-βπ < v < (1-β)π` with one thick slit `{u ≤ 0, 0 ≤ v ≤ (1-α-β)π}`.
//! Its map from the upper half-plane has prevertices `x1 ↦ i(1-α-β)π` and
//! `x2 ↦ 0`, an elementary closed form, and a logarithmic constant `C_*`
//! that gives the limit of `L^{2/n}`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use core::f64::consts::PI;

use crate::ball::{self, MonomialIndex};
use crate::jacobi::SolveOptions;
use crate::math::{scaled_ln, xlnx};
use crate::Error;

fn check_domain(alpha: f64, beta: f64) -> Result<(), Error> {
    let ok = alpha.is_finite()
        && beta.is_finite()
        && alpha >= 0.0
        && beta >= 0.0
        && alpha + beta <= 1.0 + 1e-14;
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfDomain { alpha, beta })
    }
}

/// Prevertices `x1 ≤ x2` with `α = √(x1 x2)` and `β = √((1-x1)(1-x2))`:
/// the roots of `x² - (1 + α² - β²) x + α²`.
pub fn solve_x(alpha: f64, beta: f64) -> Result<(f64, f64), Error> {
    check_domain(alpha, beta)?;
    let s = 1.0 + alpha * alpha - beta * beta;
    // s² - 4α² factors as (1-α-β)(1-α+β)(1+α-β)(1+α+β).
    let disc =
        ((1.0 - alpha - beta) * (1.0 - alpha + beta) * (1.0 + alpha - beta) * (1.0 + alpha + beta))
            .max(0.0);
    let x2 = 0.5 * (s + disc.sqrt());
    let x1 = if x2 > 0.0 { alpha * alpha / x2 } else { 0.0 };
    Ok((x1, x2.min(1.0)))
}

/// `C_*(α, β)` in closed form. At `α + β = 1` the first term is dropped
/// (its coefficient vanishes while its logarithm diverges).
pub fn c_star(alpha: f64, beta: f64) -> Result<f64, Error> {
    check_domain(alpha, beta)?;
    let head = 0.5 * (1.0 - alpha - beta);
    let first = if head <= 0.0 {
        0.0
    } else {
        let denom = (1.0 - (alpha + beta).powi(2)) * (1.0 - (alpha - beta).powi(2));
        head * (16.0 / denom).ln()
    };
    let second = scaled_ln(alpha, 4.0 / ((1.0 + alpha).powi(2) - beta * beta));
    let third = scaled_ln(beta, 4.0 / ((1.0 + beta).powi(2) - alpha * alpha));
    Ok(first + second + third)
}

/// Parameters of the limit map for one `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarMapData {
    pub alpha: f64,
    pub beta: f64,
    pub x1: f64,
    pub x2: f64,
    pub c_star: f64,
}

impl StarMapData {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, Error> {
        let (x1, x2) = solve_x(alpha, beta)?;
        Ok(Self {
            alpha,
            beta,
            x1,
            x2,
            c_star: c_star(alpha, beta)?,
        })
    }

    /// `x1 = x2`: the slit has no height (`α + β = 1`).
    pub fn is_degenerate(&self) -> bool {
        self.x2 - self.x1 <= 0.0
    }

    /// Evaluates the limit map `w_*` at `z` in the closed upper half-plane.
    ///
    /// Branches: `√(z - x)` and `ln` are principal. Each logarithm is taken
    /// of a quantity confined to one closed quadrant of the upper half-plane,
    /// so the result is continuous up to the real axis, is real on
    /// `(x2, 1)` and satisfies `w_*(z) = ln z + C_* - iβπ + O(1/z)`.
    pub fn eval_w(&self, z: Complex64) -> Result<Complex64, Error> {
        if self.is_degenerate() {
            return Err(Error::DegenerateMap {
                alpha: self.alpha,
                beta: self.beta,
            });
        }
        if z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidParameter {
                name: "z",
                value: z.im,
                reason: "point must lie in the closed upper half-plane",
            });
        }
        let singular =
            z.im == 0.0 && ((z.re == 0.0 && self.alpha > 0.0) || (z.re == 1.0 && self.beta > 0.0));
        if singular {
            return Err(Error::Singular { re: z.re, im: z.im });
        }
        let (x1, x2) = (self.x1, self.x2);
        let d = x2 - x1;
        let r1 = (z - x1).sqrt();
        let r2 = (z - x2).sqrt();
        let n1 = x2.sqrt() * r1 + x1.sqrt() * r2;
        let n2 = (1.0 - x2).sqrt() * r1 + (1.0 - x1).sqrt() * r2;
        let n3 = r1 + r2;
        let i = Complex64::i();

        let mut w = 2.0 * n3.ln() - d.ln();
        if self.alpha != 0.0 {
            w += self.alpha * (d.ln() - 2.0 * n1.ln() + z.ln());
        }
        if self.beta != 0.0 {
            w += self.beta * (d.ln() - i * PI - 2.0 * n2.ln() + (z - 1.0).ln());
        }
        Ok(w)
    }
}

/// `w_*(z; α, β)`.
pub fn eval_w_star(z: Complex64, alpha: f64, beta: f64) -> Result<Complex64, Error> {
    StarMapData::new(alpha, beta)?.eval_w(z)
}

/// Limiting proportions `κ1, λ1, κ2, λ2` of the exponents `k1, l1, k2, l2`
/// relative to the total degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticProfile {
    pub kappa1: f64,
    pub lambda1: f64,
    pub kappa2: f64,
    pub lambda2: f64,
}

impl AsymptoticProfile {
    /// Requires each entry in `[0, 1]`, a total of 1 within `1e-12`, and
    /// `κ1 ≥ λ1`, `κ2 ≥ λ2` (swap pairs first otherwise).
    pub fn new(kappa1: f64, lambda1: f64, kappa2: f64, lambda2: f64) -> Result<Self, Error> {
        let p = Self {
            kappa1,
            lambda1,
            kappa2,
            lambda2,
        };
        for (name, v) in [
            ("kappa1", kappa1),
            ("lambda1", lambda1),
            ("kappa2", kappa2),
            ("lambda2", lambda2),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "profile entries must lie in [0, 1]",
                });
            }
        }
        let total = p.entries().iter().sum::<f64>();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "profile",
                value: total,
                reason: "profile entries must sum to 1",
            });
        }
        if kappa1 < lambda1 {
            return Err(Error::InvalidParameter {
                name: "lambda1",
                value: lambda1,
                reason: "need kappa1 >= lambda1",
            });
        }
        if kappa2 < lambda2 {
            return Err(Error::InvalidParameter {
                name: "lambda2",
                value: lambda2,
                reason: "need kappa2 >= lambda2",
            });
        }
        Ok(p)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.kappa1, self.lambda1, self.kappa2, self.lambda2]
    }

    /// `(κ1 - λ1, κ2 - λ2)`, the limit-map parameters.
    pub fn alpha_beta(&self) -> (f64, f64) {
        (
            (self.kappa1 - self.lambda1).max(0.0),
            (self.kappa2 - self.lambda2).max(0.0),
        )
    }

    /// Integer exponents summing to `n`, by largest-remainder rounding of
    /// `n · profile`. Ties go to the earlier entry.
    pub fn round_indices(&self, n: usize) -> MonomialIndex {
        let raw: Vec<f64> = self.entries().iter().map(|&p| p * n as f64).collect();
        let mut ints: Vec<usize> = raw.iter().map(|&x| (x + 1e-9).floor() as usize).collect();
        let assigned: usize = ints.iter().sum();
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| {
            let ra = raw[a] - ints[a] as f64;
            let rb = raw[b] - ints[b] as f64;
            rb.partial_cmp(&ra)
                .unwrap_or(core::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        if assigned <= n {
            for &i in order.iter().take(n - assigned) {
                ints[i] += 1;
            }
        } else {
            for &i in order.iter().rev().take(assigned - n) {
                ints[i] -= 1;
            }
        }
        MonomialIndex::new(
            ints[0] as u32,
            ints[1] as u32,
            ints[2] as u32,
            ints[3] as u32,
        )
    }
}

/// The limit of `L^{2/n}`, computed twice: as the product of powers and as
/// `exp(-C_*(κ1 - λ1, κ2 - λ2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationLimit {
    pub product_form: f64,
    pub capacity_form: f64,
}

impl DeviationLimit {
    pub fn value(&self) -> f64 {
        self.product_form
    }

    /// `|ln product_form + C_*|`.
    pub fn log_discrepancy(&self) -> f64 {
        (self.product_form.ln() - self.capacity_form.ln()).abs()
    }
}

/// `(λ1+λ2)^(λ1+λ2) (κ1+κ2)^(κ1+κ2) (λ1+κ2)^(λ1+κ2) (κ1+λ2)^(κ1+λ2)` with
/// `0⁰ = 1`.
pub fn limit_constant(profile: &AsymptoticProfile) -> Result<DeviationLimit, Error> {
    let p = profile;
    let groups = [
        p.lambda1 + p.lambda2,
        p.kappa1 + p.kappa2,
        p.lambda1 + p.kappa2,
        p.kappa1 + p.lambda2,
    ];
    let log_product: f64 = groups.iter().map(|&g| xlnx(g)).sum();
    let (alpha, beta) = p.alpha_beta();
    let c = c_star(alpha, beta)?;
    Ok(DeviationLimit {
        product_form: log_product.exp(),
        capacity_form: (-c).exp(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub n: usize,
    pub index: MonomialIndex,
    /// `ln Λ = C_m(α, β)` for the rounded indices.
    pub log_lambda: f64,
    /// `L = e^{-ln Λ}`.
    pub deviation: f64,
    /// `L^{2/n}`.
    pub deviation_pow: f64,
    pub limit: f64,
    /// `|L^{2/n} - limit|`.
    pub gap: f64,
}

impl StudyRow {
    /// `(2/n) ln Λ`, which tends to `C_*`.
    pub fn scaled_log_lambda(&self) -> f64 {
        2.0 * self.log_lambda / self.n as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedDegree {
    pub n: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceStudy {
    pub rows: Vec<StudyRow>,
    pub skipped: Vec<SkippedDegree>,
}

impl ConvergenceStudy {
    /// True when each gap is strictly below the previous one.
    pub fn gaps_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].gap < w[0].gap)
    }
}

/// Compares `L^{2/n}` with the limit for each `n` in `n_list`. Odd or zero
/// `n` is skipped with a notice.
pub fn convergence_study(
    profile: &AsymptoticProfile,
    n_list: &[usize],
    opts: SolveOptions,
) -> Result<ConvergenceStudy, Error> {
    let limit = limit_constant(profile)?.value();
    let mut study = ConvergenceStudy::default();
    for &n in n_list {
        if n == 0 || n % 2 != 0 {
            study.skipped.push(SkippedDegree {
                n,
                reason: "degree must be a positive even integer",
            });
            continue;
        }
        let index = profile.round_indices(n);
        if index.total_degree() as usize != n {
            study.skipped.push(SkippedDegree {
                n,
                reason: "rounding repair failed",
            });
            continue;
        }
        let log_lambda = ball::log_lambda(&index, opts)?;
        let deviation_pow = (-2.0 * log_lambda / n as f64).exp();
        study.rows.push(StudyRow {
            n,
            index,
            log_lambda,
            deviation: (-log_lambda).exp(),
            deviation_pow,
            limit,
            gap: (deviation_pow - limit).abs(),
        });
    }
    Ok(study)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_x_examples() {
        assert_eq!(solve_x(0.0, 0.0).unwrap(), (0.0, 1.0));
        let (x1, x2) = solve_x(0.5, 0.25).unwrap();
        let r = 105f64.sqrt();
        assert!((x1 - (19.0 - r) / 32.0).abs() < 1e-15);
        assert!((x2 - (19.0 + r) / 32.0).abs() < 1e-15);
        assert!(((1.0 - x1) * (1.0 - x2) - 1.0 / 16.0).abs() < 1e-15);
        let (x1, x2) = solve_x(1.0, 0.0).unwrap();
        assert_eq!((x1, x2), (1.0, 1.0));
        assert!(StarMapData::new(1.0, 0.0).unwrap().is_degenerate());
    }

    #[test]
    fn solve_x_rejects_outside_domain() {
        assert!(matches!(solve_x(0.7, 0.4), Err(Error::OutOfDomain { .. })));
        assert!(c_star(-0.1, 0.0).is_err());
    }

    #[test]
    fn c_star_examples() {
        assert!((c_star(0.0, 0.0).unwrap() - 4f64.ln()).abs() < 1e-15);
        let expected = 4.0 * 2f64.ln() - 1.5 * 3f64.ln();
        assert!((c_star(0.5, 0.0).unwrap() - expected).abs() < 1e-14);
        assert!((c_star(0.3, 0.1).unwrap() - c_star(0.1, 0.3).unwrap()).abs() < 1e-15);
        // Boundary α + β = 1.
        assert!((c_star(0.5, 0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn limit_constant_examples() {
        let cases = [
            ([0.5, 0.0, 0.5, 0.0], 0.5),
            ([0.25, 0.25, 0.25, 0.25], 0.25),
            ([0.5, 0.5, 0.0, 0.0], 0.25),
        ];
        for (p, expected) in cases {
            let profile = AsymptoticProfile::new(p[0], p[1], p[2], p[3]).unwrap();
            let lim = limit_constant(&profile).unwrap();
            assert!((lim.value() - expected).abs() < 1e-15, "{p:?}");
            assert!(lim.log_discrepancy() < 1e-12);
        }
    }

    #[test]
    fn profile_validation() {
        assert!(AsymptoticProfile::new(0.1, 0.4, 0.25, 0.25).is_err());
        assert!(AsymptoticProfile::new(0.5, 0.0, 0.4, 0.0).is_err());
    }

    #[test]
    fn rounding_sums_to_n() {
        let p = AsymptoticProfile::new(0.25, 0.25, 0.25, 0.25).unwrap();
        let idx = p.round_indices(6);
        assert_eq!(idx.total_degree(), 6);
        assert_eq!((idx.k1, idx.l1, idx.k2, idx.l2), (2, 2, 1, 1));
        let p = AsymptoticProfile::new(0.375, 0.125, 0.375, 0.125).unwrap();
        let idx = p.round_indices(8);
        assert_eq!((idx.k1, idx.l1, idx.k2, idx.l2), (3, 1, 3, 1));
    }

    #[test]
    fn star_map_unweighted_closed_form() {
        let m = StarMapData::new(0.0, 0.0).unwrap();
        let z = Complex64::new(3.0, 0.5);
        let expected = 2.0 * (z.sqrt() + (z - 1.0).sqrt()).ln();
        assert!((m.eval_w(z).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn star_map_corners() {
        let m = StarMapData::new(0.3, 0.2).unwrap();
        let at_x2 = m.eval_w(Complex64::new(m.x2, 0.0)).unwrap();
        assert!(at_x2.norm() < 1e-14);
        let at_x1 = m.eval_w(Complex64::new(m.x1, 0.0)).unwrap();
        assert!(
            (at_x1 - Complex64::new(0.0, 0.5 * PI)).norm() < 1e-13,
            "{at_x1}"
        );
    }
}
