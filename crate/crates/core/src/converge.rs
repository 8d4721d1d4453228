//! Discrete-to-continuous experiments: periodized Schur functions, convergence
//! sweeps, weak-star convergence of Hamiltonians, round trips and scaled-mass tables against closed-form potentials.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::herglotz::schur_from_measure;
use crate::inverse::{hamiltonian, potential_from_h11, InverseMethod};
use crate::measure::{Density, Measure};
use crate::nlft::{forward_discrete, schur_ratio, DiscretePotential, SchurValue};
use crate::quad::Quad;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    /// Half period `T`.
    pub t: f64,
    pub z: Complex64,
    pub approx: Complex64,
    pub target: Complex64,
    pub abs_err: f64,
}

impl ConvergenceRow {
    pub fn new(t: f64, z: Complex64, approx: Complex64, target: Complex64) -> Self {
        ConvergenceRow { t, z, approx, target, abs_err: (approx - target).norm() }
    }
}

fn sort_rows(rows: &mut [ConvergenceRow]) {
    rows.sort_by(|a, b| {
        a.t.total_cmp(&b.t).then(a.z.re.total_cmp(&b.z.re)).then(a.z.im.total_cmp(&b.z.im))
    });
}

/// Schur function of the periodization `mu_T`.
pub fn periodized_schur(mu: &Measure, t: f64, z: Complex64, tol: f64) -> Result<SchurValue> {
    schur_from_measure(&mu.periodize(t)?, z, tol)
}

/// `|f^T(z) - f(z)|` for every `(T, z)`, sorted by `(T, Re z, Im z)`.
pub fn convergence_sweep(mu: &Measure, ts: &[f64], grid: &[Complex64], tol: f64) -> Result<Vec<ConvergenceRow>> {
    let targets: Vec<Complex64> = grid
        .par_iter()
        .map(|&z| schur_from_measure(mu, z, tol).map(|s| s.value))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(ts.len() * grid.len());
    for &t in ts {
        let mu_t = mu.periodize(t)?;
        let part: Vec<ConvergenceRow> = grid
            .par_iter()
            .zip(&targets)
            .map(|(&z, &target)| {
                schur_from_measure(&mu_t, z, tol).map(|s| ConvergenceRow::new(t, z, s.value, target))
            })
            .collect::<Result<_>>()?;
        rows.extend(part);
    }
    sort_rows(&mut rows);
    Ok(rows)
}

/// For each sample point, errors in increasing `T` and the ratios of consecutive errors.
pub fn error_ratios(rows: &[ConvergenceRow]) -> Vec<(Complex64, Vec<f64>, Vec<f64>)> {
    let mut zs: Vec<Complex64> = Vec::new();
    for r in rows {
        if !zs.contains(&r.z) {
            zs.push(r.z);
        }
    }
    zs.into_iter()
        .map(|z| {
            let mut pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.z == z).map(|r| (r.t, r.abs_err)).collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let errs: Vec<f64> = pts.iter().map(|p| p.1).collect();
            let ratios = errs.windows(2).map(|w| w[0] / w[1]).collect();
            (z, errs, ratios)
        })
        .collect()
}

/// Piecewise-linear hat: 0 outside `[left, right]`, 1 at `peak`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatFunction {
    pub left: f64,
    pub peak: f64,
    pub right: f64,
}

impl HatFunction {
    pub fn new(left: f64, peak: f64, right: f64) -> Result<Self> {
        if !(left < peak && peak < right) {
            return Err(Error::InvalidArgument("hat needs left < peak < right".into()));
        }
        Ok(HatFunction { left, peak, right })
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= self.left || t >= self.right {
            0.0
        } else if t <= self.peak {
            (t - self.left) / (self.peak - self.left)
        } else {
            (self.right - t) / (self.right - self.peak)
        }
    }

    pub fn integral(&self) -> f64 {
        0.5 * (self.right - self.left)
    }

    /// Exact `int_a^b c * hat` for a constant `c` (the hat is linear between its nodes).
    pub fn integrate_constant(&self, a: f64, b: f64, c: f64) -> f64 {
        let mut pts = vec![a.max(self.left)];
        if self.peak > a && self.peak < b {
            pts.push(self.peak);
        }
        pts.push(b.min(self.right));
        pts.windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| 0.5 * (w[1] - w[0]) * (self.eval(w[0]) + self.eval(w[1])))
            .sum::<f64>()
            * c
    }
}

/// Closed-form continuous Hamiltonian `h11(t)` and potential `f = (log h11)'/2`.
#[derive(Clone)]
pub struct HamiltonianOracle {
    pub label: String,
    h11: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    potential: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for HamiltonianOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HamiltonianOracle").field("label", &self.label).finish()
    }
}

impl HamiltonianOracle {
    /// Oracle for `h11` alone; the potential is `(log h11)'/2` by central differences (step 1e-5).
    pub fn from_h11(label: impl Into<String>, h11: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let h11: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(h11);
        let h = h11.clone();
        let potential = move |t: f64| {
            let d = 1e-5;
            let lo = (t - d).max(0.0);
            ((h(t + d)).ln() - h(lo).ln()) / (2.0 * (t + d - lo))
        };
        HamiltonianOracle { label: label.into(), h11, potential: Arc::new(potential) }
    }

    /// `rho * m + M delta_0`: `h11 = (1 + beta t)^{-2}/rho`, `f = -beta/(1 + beta t)`, `beta = M/(pi rho)`.
    pub fn atom_plus_lebesgue(rho: f64, mass: f64) -> Self {
        let beta = mass / (PI * rho);
        HamiltonianOracle {
            label: format!("h11(t) = 1/({rho} (1 + {beta} t)^2), f(t) = -{beta}/(1 + {beta} t)"),
            h11: Arc::new(move |t| 1.0 / (rho * (1.0 + beta * t).powi(2))),
            potential: Arc::new(move |t| -beta / (1.0 + beta * t)),
        }
    }

    /// Recognizes constant density with at most one atom, at the origin.
    pub fn for_measure(mu: &Measure) -> Option<Self> {
        let rho = match mu.density() {
            Density::Constant(c) if *c > 0.0 => *c,
            _ => return None,
        };
        match mu.atoms() {
            [] => Some(Self::atom_plus_lebesgue(rho, 0.0)),
            [a] if a.x == 0.0 => Some(Self::atom_plus_lebesgue(rho, a.mass)),
            _ => None,
        }
    }

    pub fn h11(&self, t: f64) -> f64 {
        (self.h11)(t)
    }

    pub fn potential(&self, t: f64) -> f64 {
        (self.potential)(t)
    }
}

/// `|int h^T phi - int h phi|` for each `T`, with `h^T` the step Hamiltonian of `mu_T`.
pub fn weakstar_h11_check(
    mu: &Measure,
    ts: &[f64],
    hat: &HatFunction,
    oracle: &HamiltonianOracle,
    method: InverseMethod,
) -> Result<Vec<f64>> {
    if hat.left < 0.0 {
        return Err(Error::InvalidArgument("hat must be supported in [0, inf)".into()));
    }
    let exact = Quad::new(1e-13).integrate_with_breaks(|t| oracle.h11(t) * hat.eval(t), &[hat.left, hat.peak, hat.right])?;
    ts.iter()
        .map(|&t| {
            let w = PI / (2.0 * t);
            let n = (hat.right / w).ceil() as usize + 1;
            let h = hamiltonian(&mu.periodize(t)?, n, method)?;
            let approx: f64 = h
                .steps()
                .iter()
                .enumerate()
                .map(|(k, &hk)| hat.integrate_constant(k as f64 * w, (k + 1) as f64 * w, hk))
                .sum();
            Ok((approx - exact).abs())
        })
        .collect()
}

/// A 1-periodic step function: `values[j]` on `[breaks[j], breaks[j+1])`, `breaks[0] = 0`, last break 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicStep {
    breaks: Vec<f64>,
    values: Vec<f64>,
}

impl PeriodicStep {
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let ok = breaks.len() == values.len() + 1
            && breaks.first() == Some(&0.0)
            && breaks.last() == Some(&1.0)
            && breaks.windows(2).all(|w| w[1] > w[0]);
        if !ok {
            return Err(Error::InvalidArgument("periodic step needs breaks 0 = b_0 < ... < b_K = 1".into()));
        }
        Ok(PeriodicStep { breaks, values })
    }

    /// Takes 1 on `[0, 1/2)` and 1/4 on `[1/2, 1)`.
    pub fn half_and_quarter() -> Self {
        PeriodicStep { breaks: vec![0.0, 0.5, 1.0], values: vec![1.0, 0.25] }
    }

    /// Normalized average `int g(f0(T t)) phi(t) dt / int phi`, integrated exactly piece by piece.
    pub fn hat_average(&self, t_scale: f64, hat: &HatFunction, g: impl Fn(f64) -> f64) -> f64 {
        let first = (hat.left * t_scale).floor() as i64;
        let last = (hat.right * t_scale).ceil() as i64;
        let mut acc = 0.0;
        for k in first..last {
            for (j, &v) in self.values.iter().enumerate() {
                let a = (k as f64 + self.breaks[j]) / t_scale;
                let b = (k as f64 + self.breaks[j + 1]) / t_scale;
                acc += hat.integrate_constant(a, b, g(v));
            }
        }
        acc / hat.integral()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().enumerate().map(|(j, v)| v * (self.breaks[j + 1] - self.breaks[j])).sum()
    }
}

/// Default round-trip grid: 50 points, `Re z` uniform in `[-5, 5]`, `Im z` cycling through 0.5, 1, 2.
pub fn default_zgrid() -> Vec<Complex64> {
    let ims = [0.5, 1.0, 2.0];
    (0..50).map(|k| Complex64::new(-5.0 + 10.0 * k as f64 / 49.0, ims[k % 3])).collect()
}

#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub residual: f64,
    pub potential: DiscretePotential,
    pub rows: Vec<ConvergenceRow>,
}

/// Inverse NLFT of `mu_T` with `N` steps, then forward again; rows compare with the Schur function of `mu_T`.
pub fn roundtrip_residual(
    mu: &Measure,
    t: f64,
    n: usize,
    zgrid: &[Complex64],
    tol: f64,
    method: InverseMethod,
) -> Result<RoundTrip> {
    let mu_t = mu.periodize(t)?;
    let potential = potential_from_h11(&hamiltonian(&mu_t, n, method)?)?;
    let mut rows: Vec<ConvergenceRow> = zgrid
        .par_iter()
        .map(|&z| {
            let approx = schur_ratio(&forward_discrete(&potential, z))?.value;
            let target = schur_from_measure(&mu_t, z, tol)?.value;
            Ok(ConvergenceRow::new(t, z, approx, target))
        })
        .collect::<Result<_>>()?;
    sort_rows(&mut rows);
    let residual = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    Ok(RoundTrip { residual, potential, rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub t: f64,
    pub scaled_mass: f64,
    pub oracle_f: f64,
}

#[derive(Debug, Clone)]
pub struct Figure1 {
    pub half_period: f64,
    pub spacing: f64,
    /// Mass `1/2 log h_0` at the origin (not part of the rows).
    pub origin_mass: f64,
    pub rows: Vec<Figure1Row>,
}

impl Figure1 {
    pub fn max_deviation_on(&self, lo: f64, hi: f64) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.t >= lo && r.t <= hi)
            .map(|r| (r.scaled_mass - r.oracle_f).abs())
            .fold(0.0, f64::max)
    }
}

/// Rows `n = 1..=N`: `t_n = n pi/(2T)`, `c_n 2T/pi`, and the oracle potential at `t_n`.
pub fn figure1_data(
    mu: &Measure,
    t: f64,
    n: usize,
    oracle: &HamiltonianOracle,
    method: InverseMethod,
) -> Result<Figure1> {
    let h = hamiltonian(&mu.periodize(t)?, n + 1, method)?;
    let pot = potential_from_h11(&h)?;
    let w = pot.spacing();
    let rows = pot
        .masses()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let tn = (k + 1) as f64 * w;
            Figure1Row { t: tn, scaled_mass: c / w, oracle_f: oracle.potential(tn) }
        })
        .collect();
    Ok(Figure1 { half_period: t, spacing: w, origin_mass: pot.origin_mass(), rows })
}
