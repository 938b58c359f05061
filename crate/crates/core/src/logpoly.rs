//! Weighted products `t^α (1-t)^β ∏ (t - ξ_j)` kept in sign / log-magnitude
//! form, and the critical points of their logarithm.

use alloc::vec::Vec;

use num_traits::Float;

use crate::roots::decreasing_root;
use crate::WeightParams;

/// `(sign, ln |∏ (t - ξ_j)|)`. A hit root gives `(0, -∞)`.
pub(crate) fn ln_abs_product(t: f64, roots: &[f64]) -> (f64, f64) {
    let mut sign = 1.0;
    let mut ln = 0.0;
    for &r in roots {
        let d = t - r;
        if d == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if d < 0.0 {
            sign = -sign;
        }
        ln += d.abs().ln();
    }
    (sign, ln)
}

/// `(sign, ln |t^α (1-t)^β ∏ (t - ξ_j)|)` for `t ∈ [0, 1]`.
pub(crate) fn ln_abs_weighted(weight: &WeightParams, t: f64, roots: &[f64]) -> (f64, f64) {
    let lw = weight.ln_weight(t);
    if lw == f64::NEG_INFINITY {
        return (0.0, f64::NEG_INFINITY);
    }
    let (sign, lp) = ln_abs_product(t, roots);
    (sign, lw + lp)
}

/// Derivative of `ln |t^α (1-t)^β ∏ (t - ξ_j)|` and its own derivative.
/// On every interval between consecutive poles the first is strictly
/// decreasing.
pub(crate) fn log_derivative(weight: &WeightParams, t: f64, roots: &[f64]) -> (f64, f64) {
    let (a, b) = (weight.alpha(), weight.beta());
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    if a != 0.0 {
        d1 += a / t;
        d2 -= a / (t * t);
    }
    if b != 0.0 {
        let s = 1.0 - t;
        d1 -= b / s;
        d2 -= b / (s * s);
    }
    for &r in roots {
        let d = t - r;
        d1 += 1.0 / d;
        d2 -= 1.0 / (d * d);
    }
    (d1, d2)
}

/// Sum of the magnitudes of the terms of [`log_derivative`]; the scale
/// against which its cancellation error is judged.
pub(crate) fn log_derivative_scale(weight: &WeightParams, t: f64, roots: &[f64]) -> f64 {
    let mut s = 0.0;
    if weight.alpha() != 0.0 {
        s += weight.alpha() / t.abs();
    }
    if weight.beta() != 0.0 {
        s += weight.beta() / (1.0 - t).abs();
    }
    s + roots.iter().map(|&r| 1.0 / (t - r).abs()).sum::<f64>()
}

/// The maximizer of `|t^α (1-t)^β ∏ (t - ξ_j)|` on each of the `n + 1`
/// intervals `[0, ξ_1], [ξ_1, ξ_2], …, [ξ_n, 1]`, for strictly increasing
/// roots in `(0, 1)`.
///
/// The logarithm is strictly concave between poles, so each interval holds
/// exactly one maximizer. With `α = 0` the first one is `t = 0`, with `β = 0`
/// the last one is `t = 1`. `seeds`, when given, are starting points.
pub(crate) fn critical_points(
    weight: &WeightParams,
    roots: &[f64],
    seeds: Option<&[f64]>,
) -> Vec<f64> {
    let n = roots.len();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let lo = if k == 0 { 0.0 } else { roots[k - 1] };
        let hi = if k == n { 1.0 } else { roots[k] };
        if k == 0 && weight.alpha() == 0.0 {
            if n == 0 && weight.beta() == 0.0 {
                out.push(0.5);
            } else {
                out.push(0.0);
            }
            continue;
        }
        if k == n && weight.beta() == 0.0 {
            out.push(1.0);
            continue;
        }
        if n == 0 {
            out.push(weight.peak());
            continue;
        }
        let start = seeds.map_or(0.5 * (lo + hi), |s| s[k]);
        out.push(decreasing_root(
            |t| log_derivative(weight, t, roots),
            lo,
            hi,
            start,
            200,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_sign_counts_roots_to_the_right() {
        let roots = [0.2, 0.5, 0.7];
        assert_eq!(ln_abs_product(0.1, &roots).0, -1.0);
        assert_eq!(ln_abs_product(0.6, &roots).0, -1.0);
        assert_eq!(ln_abs_product(0.9, &roots).0, 1.0);
        assert_eq!(ln_abs_product(0.5, &roots).0, 0.0);
    }

    #[test]
    fn chebyshev_critical_points() {
        // T_2(2t-1) has roots (2 ∓ √2)/4 and extrema at 0, 1/2, 1.
        let s = 2f64.sqrt();
        let roots = [(2.0 - s) / 4.0, (2.0 + s) / 4.0];
        let eta = critical_points(&WeightParams::unit(), &roots, None);
        assert_eq!(eta[0], 0.0);
        assert!((eta[1] - 0.5).abs() < 1e-15);
        assert_eq!(eta[2], 1.0);
    }

    #[test]
    fn weighted_single_factor() {
        // t (t - ξ): critical point ξ/2.
        let w = WeightParams::new(1.0, 0.0).unwrap();
        let eta = critical_points(&w, &[0.6], None);
        assert!((eta[0] - 0.3).abs() < 1e-15);
        assert_eq!(eta[1], 1.0);
    }
}
