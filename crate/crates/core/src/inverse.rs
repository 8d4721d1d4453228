//! Inverse spectral problem: Hamiltonian steps from trigonometric moments
//! (Toeplitz or orthogonal-polynomial route) and the discrete potential.

use crate::measure::{Measure, TrigMoments};
use crate::nlft::DiscretePotential;
use crate::{Error, Result};

/// Relative pivot threshold for positive definiteness.
pub const PIVOT_TOL: f64 = 1e-12;

/// `h11 = steps[n]` on `(n w, (n + 1) w]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepHamiltonian {
    step_width: f64,
    steps: Vec<f64>,
}

impl StepHamiltonian {
    pub fn new(step_width: f64, steps: Vec<f64>) -> Result<Self> {
        if !(step_width.is_finite() && step_width > 0.0) {
            return Err(Error::InvalidArgument(format!("step width {step_width} must be positive")));
        }
        if let Some(k) = steps.iter().position(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::NonPositiveStep { index: k, value: steps[k] });
        }
        Ok(StepHamiltonian { step_width, steps })
    }

    pub fn step_width(&self) -> f64 {
        self.step_width
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `h11(t)`; the value at a breakpoint belongs to the step on its left.
    pub fn eval(&self, t: f64) -> Option<f64> {
        if t < 0.0 {
            return None;
        }
        let n = ((t / self.step_width).ceil() as usize).saturating_sub(1);
        self.steps.get(n).copied()
    }
}

/// The `(n+1) x (n+1)` Toeplitz matrix `J_n` of a moment sequence.
#[derive(Debug, Clone, Copy)]
pub struct ToeplitzSystem<'a> {
    pub moments: &'a TrigMoments,
    pub n: usize,
}

impl ToeplitzSystem<'_> {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.moments.toeplitz_entry(i, j)
    }

    pub fn dense(&self) -> Vec<Vec<f64>> {
        (0..=self.n).map(|i| (0..=self.n).map(|j| self.entry(i, j)).collect()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToeplitzSolver {
    /// Cholesky factorization of `J_{N-1}`; its leading blocks factor every `J_n`.
    Cholesky,
    /// Levinson recursion for `J_n x = 1`, `O(N^2)`.
    #[default]
    Levinson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InverseMethod {
    #[default]
    Toeplitz,
    Opuc,
}

impl std::str::FromStr for InverseMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toeplitz" => Ok(InverseMethod::Toeplitz),
            "opuc" => Ok(InverseMethod::Opuc),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?} (expected toeplitz or opuc)"))),
        }
    }
}

fn check_len(mom: &TrigMoments, n: usize) -> Result<()> {
    if n == 0 || mom.len() < n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= N <= number of moments ({}), got N = {n}",
            mom.len()
        )));
    }
    Ok(())
}

/// `h_n = sum(J_n^{-1}) - sum(J_{n-1}^{-1})` for `0 <= n < N` (Levinson solver).
pub fn toeplitz_h11(mom: &TrigMoments, n: usize) -> Result<StepHamiltonian> {
    toeplitz_h11_with(mom, n, ToeplitzSolver::Levinson)
}

pub fn toeplitz_h11_with(mom: &TrigMoments, n: usize, solver: ToeplitzSolver) -> Result<StepHamiltonian> {
    check_len(mom, n)?;
    let steps = match solver {
        ToeplitzSolver::Cholesky => cholesky_steps(mom, n)?,
        ToeplitzSolver::Levinson => levinson_steps(mom, n)?,
    };
    StepHamiltonian::new(mom.step_width(), steps)
}

/// `sum(J_n^{-1})` for `0 <= n < N`.
pub fn inverse_sums(mom: &TrigMoments, n: usize) -> Result<Vec<f64>> {
    let h = toeplitz_h11(mom, n)?;
    let mut acc = 0.0;
    Ok(h.steps().iter().map(|s| {
        acc += s;
        acc
    })
    .collect())
}

/// With `J_{N-1} = L L^T` and `y = L^{-1} 1`, `1^T J_n^{-1} 1 = sum_{k<=n} y_k^2`,
/// so `h_n = y_n^2`.
fn cholesky_steps(mom: &TrigMoments, n: usize) -> Result<Vec<f64>> {
    let a0 = mom.coeffs()[0];
    let mut l = vec![vec![0.0; n]; n];
    let mut y = vec![0.0; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = mom.toeplitz_entry(i, j);
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > PIVOT_TOL * a0.abs()) || !(a0 > 0.0) {
                    return Err(Error::NotPositiveDefinite { order: i, pivot: s });
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
        let mut s = 1.0;
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    Ok(y.iter().map(|v| v * v).collect())
}

/// Levinson recursion carrying `b` (`J_n b = e_n`) and `x` (`J_n x = 1`).
/// Moving to order `n + 1`, `x' = [x; 0] + (1 - mu) b'` with `mu = r^T x`, so
/// `h_{n+1} = (1 - mu) * sum(b')`.
fn levinson_steps(mom: &TrigMoments, n: usize) -> Result<Vec<f64>> {
    let a0 = mom.coeffs()[0];
    if !(a0 > PIVOT_TOL * a0.abs()) {
        return Err(Error::NotPositiveDefinite { order: 0, pivot: a0 });
    }
    let t = |k: usize| mom.toeplitz_entry(0, k);
    let mut steps = Vec::with_capacity(n);
    let mut f = vec![1.0 / a0];
    let mut x = vec![1.0 / a0];
    steps.push(1.0 / a0);
    for m in 1..n {
        // Forward vector f solves J_{m-1} f = e_0; by persymmetry reverse(f) solves J_{m-1} b = e_last.
        let eps: f64 = f.iter().enumerate().map(|(i, fi)| t(m - i) * fi).sum();
        let denom = 1.0 - eps * eps;
        let mut f_new = vec![0.0; m + 1];
        for i in 0..m {
            f_new[i] += f[i] / denom;
            f_new[i + 1] -= eps * f[m - 1 - i] / denom;
        }
        let b_new: Vec<f64> = f_new.iter().rev().copied().collect();
        // Schur complement of J_m, i.e. the last Cholesky pivot.
        let pivot = 1.0 / b_new[m];
        if !(pivot > PIVOT_TOL * a0) || !denom.is_finite() {
            return Err(Error::NotPositiveDefinite { order: m, pivot });
        }
        let mu: f64 = x.iter().enumerate().map(|(i, xi)| t(m - i) * xi).sum();
        let g = 1.0 - mu;
        x.push(0.0);
        for (xi, bi) in x.iter_mut().zip(&b_new) {
            *xi += g * bi;
        }
        steps.push(g * b_new.iter().sum::<f64>());
        f = f_new;
    }
    Ok(steps)
}

/// Real Verblunsky coefficients `alpha_0..alpha_{N-2}` of the circle measure
/// with moments `c_0 = a_0`, `c_k = a_k/2` (Szego recursion, monic polynomials).
pub fn verblunsky(mom: &TrigMoments, n: usize) -> Result<Vec<f64>> {
    check_len(mom, n)?;
    let c = |k: usize| if k == 0 { mom.coeffs()[0] } else { 0.5 * mom.coeffs()[k] };
    if !(c(0) > 0.0) {
        return Err(Error::NotNontrivial { index: 0, value: c(0) });
    }
    let mut phi = vec![1.0];
    let mut energy = c(0);
    let mut alphas = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let alpha = phi.iter().enumerate().map(|(j, p)| p * c(j + 1)).sum::<f64>() / energy;
        if !(alpha.abs() < 1.0) {
            return Err(Error::NotNontrivial { index: k, value: alpha });
        }
        // Phi_{k+1}(z) = z Phi_k(z) - alpha Phi_k^*(z).
        let mut next = vec![0.0; k + 2];
        for j in 0..=k {
            next[j + 1] += phi[j];
            next[j] -= alpha * phi[k - j];
        }
        phi = next;
        energy *= 1.0 - alpha * alpha;
        alphas.push(alpha);
    }
    Ok(alphas)
}

/// `h_n = |phi_n(1)|^2 = prod_{k<n} (1 - alpha_k)/(1 + alpha_k) / c_0`.
pub fn opuc_h11(mom: &TrigMoments, n: usize) -> Result<StepHamiltonian> {
    let alphas = verblunsky(mom, n)?;
    let mut h = 1.0 / mom.coeffs()[0];
    let mut steps = vec![h];
    for a in alphas {
        h *= (1.0 - a) / (1.0 + a);
        steps.push(h);
    }
    StepHamiltonian::new(mom.step_width(), steps)
}

/// Masses `c_n = 1/2 log(h_n/h_{n-1})` at `n w` for `n >= 1`, and the jump
/// `1/2 log h_0` of `log h11` at the origin.
pub fn potential_from_h11(h: &StepHamiltonian) -> Result<DiscretePotential> {
    let s = h.steps();
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty Hamiltonian".into()));
    }
    let origin = 0.5 * s[0].ln();
    let masses = s.windows(2).map(|w| 0.5 * (w[1] / w[0]).ln()).collect();
    DiscretePotential::with_origin(h.step_width(), origin, masses)
}

/// Hamiltonian steps `h_0..h_{N-1}` of an even periodic measure.
pub fn hamiltonian(mu: &Measure, n: usize, method: InverseMethod) -> Result<StepHamiltonian> {
    let mom = mu.trig_moments(n.saturating_sub(1))?;
    match method {
        InverseMethod::Toeplitz => toeplitz_h11(&mom, n),
        InverseMethod::Opuc => opuc_h11(&mom, n),
    }
}

/// Discrete potential with masses `c_1..c_{N-1}` (plus the origin mass).
pub fn inverse_nlft(mu: &Measure, n: usize, method: InverseMethod) -> Result<DiscretePotential> {
    potential_from_h11(&hamiltonian(mu, n, method)?)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn atom_plus_lebesgue_moments(t: f64, n: usize) -> TrigMoments {
        let s = (2.0 * PI).sqrt();
        let mut c = vec![(s + 2.0 * t / s) / (2.0 * t)];
        c.extend(std::iter::repeat_n(s / t, n));
        TrigMoments::new(t, c).unwrap()
    }

    fn gauss_jordan_sum(a: Vec<Vec<f64>>) -> f64 {
        let n = a.len();
        let mut m: Vec<Vec<f64>> = a
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
            m.swap(col, piv);
            let p = m[col][col];
            for v in m[col].iter_mut() {
                *v /= p;
            }
            for r in 0..n {
                if r != col {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
        m.iter().map(|row| row[n..].iter().sum::<f64>()).sum()
    }

    #[test]
    fn lebesgue_steps_are_one() {
        let mom = TrigMoments::new(2.0, vec![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        for solver in [ToeplitzSolver::Cholesky, ToeplitzSolver::Levinson] {
            let h = toeplitz_h11_with(&mom, 5, solver).unwrap();
            assert!(h.steps().iter().all(|s| (s - 1.0).abs() < 1e-15));
        }
        assert!(opuc_h11(&mom, 5).unwrap().steps().iter().all(|s| (s - 1.0).abs() < 1e-15));
    }

    #[test]
    fn atom_plus_lebesgue_steps() {
        for t in [PI, 2.0 * PI, 4.0 * PI, 8.0 * PI] {
            let mom = atom_plus_lebesgue_moments(t, 40);
            let s = (2.0 * PI).sqrt();
            for solver in [ToeplitzSolver::Cholesky, ToeplitzSolver::Levinson] {
                let h = toeplitz_h11_with(&mom, 33, solver).unwrap();
                for (n, hn) in h.steps().iter().enumerate() {
                    let nf = n as f64;
                    let exact = s * t * t / ((nf * PI + t) * (nf * PI + t + PI));
                    assert!((hn / exact - 1.0).abs() < 1e-10, "T={t} n={n}");
                }
            }
            assert!((toeplitz_h11(&mom, 1).unwrap().steps()[0] - 1.0 / mom.coeffs()[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn brute_force_sums() {
        let mom = TrigMoments::new(1.5, vec![2.0, 0.9, -0.3, 0.4, 0.1, -0.2, 0.05, 0.3]).unwrap();
        let sums = inverse_sums(&mom, 8).unwrap();
        for (n, s) in sums.iter().enumerate() {
            let oracle = gauss_jordan_sum(ToeplitzSystem { moments: &mom, n }.dense());
            assert!((s - oracle).abs() < 1e-12, "n={n}: {s} vs {oracle}");
        }
    }

    #[test]
    fn routes_agree() {
        let mom = TrigMoments::new(1.0, vec![1.3, 0.8, 0.1, -0.2, 0.35, 0.0, 0.1]).unwrap();
        let a = toeplitz_h11_with(&mom, 7, ToeplitzSolver::Cholesky).unwrap();
        let b = toeplitz_h11_with(&mom, 7, ToeplitzSolver::Levinson).unwrap();
        let c = opuc_h11(&mom, 7).unwrap();
        for k in 0..7 {
            assert!((a.steps()[k] - b.steps()[k]).abs() < 1e-12);
            assert!((a.steps()[k] - c.steps()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn one_minus_cos_density() {
        // c_0 = 1, c_1 = -1/2: alpha_0 = -1/2 and h_1 = 3.
        let mom = TrigMoments::new(PI, vec![1.0, -1.0, 0.0]).unwrap();
        assert_eq!(verblunsky(&mom, 2).unwrap(), vec![-0.5]);
        assert!((opuc_h11(&mom, 2).unwrap().steps()[1] - 3.0).abs() < 1e-15);
        assert!((toeplitz_h11(&mom, 2).unwrap().steps()[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn indefinite_rejected() {
        let mom = TrigMoments::new(1.0, vec![1.0, 2.5, 0.0]).unwrap();
        for solver in [ToeplitzSolver::Cholesky, ToeplitzSolver::Levinson] {
            assert!(matches!(toeplitz_h11_with(&mom, 3, solver), Err(Error::NotPositiveDefinite { order: 1, .. })));
        }
        assert!(matches!(opuc_h11(&mom, 3), Err(Error::NotNontrivial { index: 0, .. })));
    }

    #[test]
    fn potential_from_steps() {
        let h = StepHamiltonian::new(0.5, vec![1.0, 1.0f64.exp().powi(2)]).unwrap();
        let p = potential_from_h11(&h).unwrap();
        assert_eq!(p.origin_mass(), 0.0);
        assert!((p.masses()[0] - 1.0).abs() < 1e-15);
        assert!(StepHamiltonian::new(0.5, vec![1.0, 0.0]).is_err());
        let flat = potential_from_h11(&StepHamiltonian::new(1.0, vec![2.0; 4]).unwrap()).unwrap();
        assert!(flat.masses().iter().all(|c| *c == 0.0));
    }

    #[test]
    fn atom_plus_lebesgue_masses() {
        let t = PI;
        let s = (2.0 * PI).sqrt();
        let mu = Measure::lebesgue_plus_atom(1.0 / s, 0.0, s).unwrap().periodize(t).unwrap();
        let pot = inverse_nlft(&mu, 32, InverseMethod::Toeplitz).unwrap();
        assert_eq!(pot.spacing(), 0.5);
        for (k, c) in pot.masses().iter().enumerate() {
            let n = (k + 1) as f64;
            let expect = 0.5 * (((n - 1.0) * PI + t) / ((n + 1.0) * PI + t)).ln();
            assert!((c - expect).abs() < 1e-8);
        }
    }

    #[test]
    fn step_lookup() {
        let h = StepHamiltonian::new(0.5, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(h.eval(0.25), Some(1.0));
        assert_eq!(h.eval(0.5), Some(1.0));
        assert_eq!(h.eval(0.75), Some(2.0));
        assert_eq!(h.eval(2.0), None);
    }
}
