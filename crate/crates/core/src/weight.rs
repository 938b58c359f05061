use num_traits::Float;

use crate::math::scaled_ln;
use crate::Error;

/// Exponents of the Jacobi-type weight `t^α (1-t)^β` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    alpha: f64,
    beta: f64,
}

impl WeightParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, Error> {
        for (name, value) in [("alpha", alpha), ("beta", beta)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "weight exponents must be finite and nonnegative",
                });
            }
        }
        Ok(Self { alpha, beta })
    }

    /// The unweighted case `α = β = 0`.
    pub const fn unit() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The weight with `α` and `β` exchanged, i.e. composed with `t ↦ 1 - t`.
    pub fn mirrored(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// `ln(t^α (1-t)^β)`; `-∞` where the weight vanishes.
    pub fn ln_weight(&self, t: f64) -> f64 {
        scaled_ln(self.alpha, t) + scaled_ln(self.beta, 1.0 - t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.ln_weight(t).exp()
    }

    /// Where the weight alone peaks: `α/(α+β)`, or `1/2` when both vanish.
    pub fn peak(&self) -> f64 {
        let sum = self.alpha + self.beta;
        if sum == 0.0 {
            0.5
        } else {
            self.alpha / sum
        }
    }

    /// `sup t^α (1-t)^β = α^α β^β / (α+β)^(α+β)`, as a logarithm.
    pub fn ln_peak_value(&self) -> f64 {
        use crate::math::xlnx;
        xlnx(self.alpha) + xlnx(self.beta) - xlnx(self.alpha + self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_and_nan() {
        assert!(WeightParams::new(-0.1, 0.0).is_err());
        assert!(WeightParams::new(0.0, f64::NAN).is_err());
        assert!(WeightParams::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn zero_exponent_never_vanishes() {
        let w = WeightParams::new(0.0, 2.0).unwrap();
        assert_eq!(w.eval(0.0), 1.0);
        assert_eq!(w.eval(1.0), 0.0);
    }

    #[test]
    fn peak_value_of_sqrt_weight() {
        let w = WeightParams::new(0.5, 0.5).unwrap();
        assert!((w.ln_peak_value().exp() - 0.5).abs() < 1e-15);
        assert_eq!(w.peak(), 0.5);
    }
}
