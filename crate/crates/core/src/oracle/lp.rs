//! Dense linear programs `min c·x` subject to `A x ≤ b` with free `x`.
//!
//! Solved through the dual in standard form,
//!
//! ```text
//! min b·y   subject to   Aᵀ y = -c,  y ≥ 0,
//! ```
//!
//! by a two-phase revised simplex method with an explicit basis inverse.
//! The primal solution is read off the simplex multipliers. The number of
//! primal variables is small (the basis is square in that dimension), the
//! number of constraints can be large.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("the program is infeasible")]
    Infeasible,
    #[error("the program is unbounded")]
    Unbounded,
    #[error("simplex iteration limit reached")]
    IterationLimit,
    #[error("basis matrix became singular")]
    SingularBasis,
    #[error("dimensions do not match")]
    Shape,
}

/// `min c·x` subject to `A x ≤ b`. `a` is row major with `c.len()` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLp {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    /// `c·x` for the returned `x`.
    pub primal_objective: f64,
    /// `-b·y` for the final dual-feasible `y`; a certified lower bound on
    /// the optimum.
    pub dual_objective: f64,
    pub iterations: usize,
}

const MAX_ITER: usize = 100_000;
const REFACTOR_EVERY: usize = 64;
const BLAND_AFTER: usize = 64;

impl DenseLp {
    pub fn rows(&self) -> usize {
        self.b.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let (m, p) = (self.rows(), self.cols());
        if p == 0 || self.a.len() != m * p {
            return Err(LpError::Shape);
        }
        Simplex::new(self).run()
    }
}

/// Dual tableau data. Structural columns `0..m` are the rows of `A`
/// (scaled by `sign`); columns `m..m+p` are artificials.
struct Simplex<'a> {
    lp: &'a DenseLp,
    m: usize,
    p: usize,
    sign: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    is_basic: Vec<bool>,
    iterations: usize,
}

impl<'a> Simplex<'a> {
    fn new(lp: &'a DenseLp) -> Self {
        let (m, p) = (lp.rows(), lp.cols());
        let sign: Vec<f64> =
            lp.c.iter()
                .map(|&c| if -c < 0.0 { -1.0 } else { 1.0 })
                .collect();
        let rhs: Vec<f64> = lp.c.iter().zip(&sign).map(|(&c, &s)| -c * s).collect();
        let mut binv = vec![0.0; p * p];
        for i in 0..p {
            binv[i * p + i] = 1.0;
        }
        let mut is_basic = vec![false; m + p];
        for flag in &mut is_basic[m..] {
            *flag = true;
        }
        Self {
            lp,
            m,
            p,
            sign,
            xb: rhs.clone(),
            rhs,
            basis: (m..m + p).collect(),
            binv,
            is_basic,
            iterations: 0,
        }
    }

    /// Column `j` of the scaled constraint matrix.
    fn column(&self, j: usize, out: &mut [f64]) {
        if j >= self.m {
            out.iter_mut().for_each(|v| *v = 0.0);
            out[j - self.m] = 1.0;
        } else {
            let row = &self.lp.a[j * self.p..(j + 1) * self.p];
            for ((o, &a), &s) in out.iter_mut().zip(row).zip(&self.sign) {
                *o = a * s;
            }
        }
    }

    fn cost(&self, j: usize, phase_one: bool) -> f64 {
        match (phase_one, j >= self.m) {
            (true, true) => 1.0,
            (true, false) => 0.0,
            (false, true) => 0.0,
            (false, false) => self.lp.b[j],
        }
    }

    /// `π = c_B B⁻¹`.
    fn multipliers(&self, phase_one: bool) -> Vec<f64> {
        let p = self.p;
        let mut pi = vec![0.0; p];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = self.cost(j, phase_one);
            if c != 0.0 {
                for (i, v) in pi.iter_mut().enumerate() {
                    *v += c * self.binv[r * p + i];
                }
            }
        }
        pi
    }

    fn refactor(&mut self) -> Result<(), LpError> {
        let p = self.p;
        // Gauss-Jordan on [B | I] with partial pivoting.
        let mut bmat = vec![0.0; p * p];
        let mut col = vec![0.0; p];
        for (c, &j) in self.basis.iter().enumerate() {
            self.column(j, &mut col);
            for r in 0..p {
                bmat[r * p + c] = col[r];
            }
        }
        let mut inv = vec![0.0; p * p];
        for i in 0..p {
            inv[i * p + i] = 1.0;
        }
        for k in 0..p {
            let piv = (k..p)
                .max_by(|&x, &y| bmat[x * p + k].abs().total_cmp(&bmat[y * p + k].abs()))
                .unwrap();
            if bmat[piv * p + k].abs() < 1e-14 {
                return Err(LpError::SingularBasis);
            }
            if piv != k {
                for c in 0..p {
                    bmat.swap(k * p + c, piv * p + c);
                    inv.swap(k * p + c, piv * p + c);
                }
            }
            let d = bmat[k * p + k];
            for c in 0..p {
                bmat[k * p + c] /= d;
                inv[k * p + c] /= d;
            }
            for r in 0..p {
                if r != k {
                    let f = bmat[r * p + k];
                    if f != 0.0 {
                        for c in 0..p {
                            bmat[r * p + c] -= f * bmat[k * p + c];
                            inv[r * p + c] -= f * inv[k * p + c];
                        }
                    }
                }
            }
        }
        // Basis column c sits in row c of B⁻¹.
        self.binv = inv;
        for r in 0..p {
            let v: f64 = (0..p).map(|i| self.binv[r * p + i] * self.rhs[i]).sum();
            self.xb[r] = v.max(0.0);
        }
        Ok(())
    }

    fn ftran(&self, col: &[f64]) -> Vec<f64> {
        let p = self.p;
        (0..p)
            .map(|r| (0..p).map(|i| self.binv[r * p + i] * col[i]).sum())
            .collect()
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[f64]) {
        let p = self.p;
        let piv = u[row];
        let theta = self.xb[row] / piv;
        for (r, (x, &ur)) in self.xb.iter_mut().zip(u).enumerate() {
            if r != row {
                *x = (*x - theta * ur).max(0.0);
            }
        }
        self.xb[row] = theta;
        for i in 0..p {
            self.binv[row * p + i] /= piv;
        }
        for (r, &f) in u.iter().enumerate() {
            if r != row && f != 0.0 {
                for i in 0..p {
                    self.binv[r * p + i] -= f * self.binv[row * p + i];
                }
            }
        }
        self.is_basic[self.basis[row]] = false;
        self.is_basic[entering] = true;
        self.basis[row] = entering;
    }

    /// Runs one phase to optimality.
    fn phase(&mut self, phase_one: bool) -> Result<(), LpError> {
        let mut col = vec![0.0; self.p];
        let mut degenerate_run = 0usize;
        let scale = if phase_one {
            1.0
        } else {
            self.lp.b.iter().fold(1.0f64, |s, &v| s.max(v.abs()))
        };
        let mut since_refactor = 0usize;
        loop {
            if self.iterations >= MAX_ITER {
                return Err(LpError::IterationLimit);
            }
            if since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
                since_refactor = 0;
            }
            let pi = self.multipliers(phase_one);
            let bland = degenerate_run >= BLAND_AFTER;
            let mut entering = None;
            let mut best = -1e-11 * scale;
            for j in 0..self.m {
                if self.is_basic[j] {
                    continue;
                }
                self.column(j, &mut col);
                let d =
                    self.cost(j, phase_one) - pi.iter().zip(&col).map(|(a, b)| a * b).sum::<f64>();
                if d < best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = d;
                }
            }
            let Some(e) = entering else {
                return Ok(());
            };
            self.column(e, &mut col);
            let u = self.ftran(&col);
            let umax = u.iter().fold(0.0f64, |s, v| s.max(v.abs()));
            let tol = 1e-9 * umax.max(1.0);
            let mut leave: Option<(usize, f64)> = None;
            for (r, &ur) in u.iter().enumerate() {
                if ur > tol {
                    let ratio = self.xb[r] / ur;
                    let better = match leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < lratio - 1e-14
                                || (ratio <= lratio + 1e-14 && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leave else {
                return Err(LpError::Unbounded);
            };
            if ratio <= 1e-14 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, e, &u);
            self.iterations += 1;
            since_refactor += 1;
        }
    }

    fn run(mut self) -> Result<LpSolution, LpError> {
        self.phase(true)?;
        let infeasibility: f64 = self
            .basis
            .iter()
            .zip(&self.xb)
            .filter(|(&j, _)| j >= self.m)
            .map(|(_, &v)| v)
            .sum();
        let rhs_scale = self.rhs.iter().fold(1.0f64, |s, v| s.max(v.abs()));
        // An infeasible dual means an unbounded primal and vice versa.
        if infeasibility > 1e-9 * rhs_scale {
            return Err(LpError::Unbounded);
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut col = vec![0.0; self.p];
        for row in 0..self.p {
            if self.basis[row] < self.m {
                continue;
            }
            let mut pick = None;
            for j in 0..self.m {
                if self.is_basic[j] {
                    continue;
                }
                self.column(j, &mut col);
                let u = self.ftran(&col);
                if u[row].abs() > 1e-9 {
                    pick = Some((j, u));
                    break;
                }
            }
            match pick {
                Some((j, u)) => self.pivot(row, j, &u),
                None => return Err(LpError::SingularBasis),
            }
        }
        // Artificials never re-enter: the pricing loop only scans 0..m.
        self.refactor()?;
        self.phase(false).map_err(|e| match e {
            LpError::Unbounded => LpError::Infeasible,
            other => other,
        })?;
        self.refactor()?;

        let pi = self.multipliers(false);
        let x: Vec<f64> = pi.iter().zip(&self.sign).map(|(v, s)| v * s).collect();
        let primal_objective = self.lp.c.iter().zip(&x).map(|(a, b)| a * b).sum();
        let dual_objective = -self
            .basis
            .iter()
            .zip(&self.xb)
            .map(|(&j, &y)| self.lp.b[j] * y)
            .sum::<f64>();
        Ok(LpSolution {
            x,
            primal_objective,
            dual_objective,
            iterations: self.iterations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_box_problem() {
        // min -x - y  s.t.  x ≤ 1, y ≤ 2, x + y ≤ 2.5, -x ≤ 0, -y ≤ 0.
        let lp = DenseLp {
            a: vec![1.0, 0.0, 0.0, 1.0, 1.0, 1.0, -1.0, 0.0, 0.0, -1.0],
            b: vec![1.0, 2.0, 2.5, 0.0, 0.0],
            c: vec![-1.0, -1.0],
        };
        let s = lp.solve().unwrap();
        assert!((s.primal_objective + 2.5).abs() < 1e-12);
        assert!((s.dual_objective + 2.5).abs() < 1e-12);
    }

    #[test]
    fn discrete_chebyshev_line_fit() {
        // min h  s.t. |x0 + x1 t_i - t_i²| ≤ h on t = 0, 1/2, 1: h = 1/8.
        let ts = [0.0, 0.5, 1.0];
        let mut a = Vec::new();
        let mut b = Vec::new();
        for &t in &ts {
            a.extend_from_slice(&[1.0, t, -1.0]);
            b.push(t * t);
            a.extend_from_slice(&[-1.0, -t, -1.0]);
            b.push(-t * t);
        }
        let s = DenseLp {
            a,
            b,
            c: vec![0.0, 0.0, 1.0],
        }
        .solve()
        .unwrap();
        assert!((s.x[2] - 0.125).abs() < 1e-14);
        assert!((s.x[1] - 1.0).abs() < 1e-14);
        assert!((s.x[0] + 0.125).abs() < 1e-14);
        assert!((s.dual_objective - 0.125).abs() < 1e-14);
    }

    #[test]
    fn unbounded_primal_is_reported() {
        // min -x with only x ≥ 0.
        let lp = DenseLp {
            a: vec![-1.0],
            b: vec![0.0],
            c: vec![-1.0],
        };
        assert_eq!(lp.solve().unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn infeasible_primal_is_reported() {
        // x ≤ -1 and -x ≤ -1.
        let lp = DenseLp {
            a: vec![1.0, -1.0],
            b: vec![-1.0, -1.0],
            c: vec![1.0],
        };
        assert_eq!(lp.solve().unwrap_err(), LpError::Infeasible);
    }

    #[test]
    fn shape_mismatch() {
        let lp = DenseLp {
            a: vec![1.0, 2.0, 3.0],
            b: vec![1.0],
            c: vec![1.0, 1.0],
        };
        assert_eq!(lp.solve().unwrap_err(), LpError::Shape);
    }
}
