//! Forward NLFT: transfer matrices of discrete and piecewise-constant potentials.
//!
//! The state is `G = [[a#, b#], [b, a]]` with `a#(z) = conj(a(conj z))`.
//! A point mass `c` at `tau` contributes the factor
//! `exp(c [[0, e^{-2iz tau}], [e^{2iz tau}, 0]])` (see [`point_mass_factor`]);
//! factors are left-multiplied in increasing `tau`. The transform of a
//! potential `f` is this ordered exponential driven by `-f`, which is the sign
//! for which `b/a = (S_mu - 1)/(S_mu + 1)` with `mu` the spectral measure of `f`.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::{Error, Result, I};

pub type Mat2 = [[Complex64; 2]; 2];

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const IDENTITY: Mat2 = [[ONE, ZERO], [ZERO, ONE]];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `|det(m) - e^{-2 ls}|` over `max(|m00 m11| + |m01 m10|, e^{-2 ls})`.
fn drift(m: &Mat2, ls: f64) -> f64 {
    let unit = (-2.0 * ls).exp();
    let size = (m[0][0] * m[1][1]).norm() + (m[0][1] * m[1][0]).norm();
    (det(m) - unit).norm() / size.max(unit)
}

pub fn det(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn max_abs(m: &Mat2) -> f64 {
    m.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Masses `c_n` at `t_n = n * spacing` (`n >= 1`) plus an optional mass at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePotential {
    spacing: f64,
    origin_mass: f64,
    masses: Vec<f64>,
}

impl DiscretePotential {
    pub fn new(spacing: f64, masses: Vec<f64>) -> Result<Self> {
        Self::with_origin(spacing, 0.0, masses)
    }

    pub fn with_origin(spacing: f64, origin_mass: f64, masses: Vec<f64>) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::spec("spacing", "must be a positive number"));
        }
        if !origin_mass.is_finite() {
            return Err(Error::spec("origin_mass", "not finite"));
        }
        if let Some(k) = masses.iter().position(|c| !c.is_finite()) {
            return Err(Error::spec(format!("masses[{k}]"), "not finite"));
        }
        Ok(DiscretePotential { spacing, origin_mass, masses })
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin_mass(&self) -> f64 {
        self.origin_mass
    }

    /// `c_1, c_2, ...`; `masses()[k]` sits at `(k + 1) * spacing`.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `(tau, c)` pairs in increasing `tau`, origin first when nonzero.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let origin = (self.origin_mass != 0.0).then_some((0.0, self.origin_mass));
        origin
            .into_iter()
            .chain(self.masses.iter().enumerate().map(move |(k, &c)| ((k + 1) as f64 * self.spacing, c)))
    }

    pub fn total_variation(&self) -> f64 {
        self.origin_mass.abs() + self.masses.iter().map(|c| c.abs()).sum::<f64>()
    }

    /// Shift the support right by `k` grid steps.
    pub fn shifted(&self, k: usize) -> Result<Self> {
        if self.origin_mass != 0.0 && k > 0 {
            let mut masses = vec![0.0; k - 1];
            masses.push(self.origin_mass);
            masses.extend_from_slice(&self.masses);
            return DiscretePotential::new(self.spacing, masses);
        }
        let mut masses = vec![0.0; k];
        masses.extend_from_slice(&self.masses);
        DiscretePotential::with_origin(self.spacing, self.origin_mass, masses)
    }

    pub fn scaled(&self, eps: f64) -> Self {
        DiscretePotential {
            spacing: self.spacing,
            origin_mass: eps * self.origin_mass,
            masses: self.masses.iter().map(|c| eps * c).collect(),
        }
    }

    fn to_value(&self) -> Value {
        json!({"kind": "discrete", "spacing": self.spacing, "origin_mass": self.origin_mass, "masses": self.masses})
    }
}

/// `f = values[j]` on `(breakpoints[j], breakpoints[j+1]]`, zero beyond the last breakpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct StepPotential {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepPotential {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.first() != Some(&0.0) {
            return Err(Error::spec("breakpoints[0]", "must be 0"));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::spec("values", "need exactly one value per interval between breakpoints"));
        }
        for k in 1..breakpoints.len() {
            if !(breakpoints[k].is_finite() && breakpoints[k] > breakpoints[k - 1]) {
                return Err(Error::spec(format!("breakpoints[{k}]"), "breakpoints must be strictly increasing"));
            }
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::spec(format!("values[{k}]"), "not finite"));
        }
        Ok(StepPotential { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn end(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// `(dt, f)` pieces.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(j, &f)| (self.breakpoints[j + 1] - self.breakpoints[j], f))
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.steps().map(|(dt, f)| dt * f * f).sum()
    }

    /// `a * f(a t)` for `a > 0`.
    pub fn time_scaled(&self, a: f64) -> Result<Self> {
        StepPotential::new(
            self.breakpoints.iter().map(|t| t / a).collect(),
            self.values.iter().map(|f| a * f).collect(),
        )
    }

    pub fn negated(&self) -> Self {
        StepPotential { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|f| -f).collect() }
    }

    fn to_value(&self) -> Value {
        json!({"kind": "step", "breakpoints": self.breakpoints, "values": self.values})
    }

    /// Monodromy `M(t_end, z)` of `X' = [[f, -z], [z, -f]] X`, `M(0) = I`; the
    /// potential is zero beyond its last breakpoint and cut at `t_end`.
    pub fn monodromy(&self, t_end: f64, z: Complex64) -> Mat2 {
        let (m, ls) = self.monodromy_scaled(t_end, z);
        let s = ls.exp();
        m.map(|row| row.map(|c| c * s))
    }

    /// Monodromy as `(M_hat, log_scale)` with `M = e^{log_scale} M_hat`.
    fn monodromy_scaled(&self, t_end: f64, z: Complex64) -> (Mat2, f64) {
        let mut m = IDENTITY;
        let mut ls = 0.0;
        let mut t = 0.0;
        for (j, &f) in self.values.iter().enumerate() {
            if t >= t_end {
                break;
            }
            let hi = self.breakpoints[j + 1].min(t_end);
            m = mat_mul(&step_propagator(f, hi - t, z), &m);
            t = hi;
            renormalize(&mut m, &mut ls);
        }
        if t_end > t {
            m = mat_mul(&step_propagator(0.0, t_end - t, z), &m);
            renormalize(&mut m, &mut ls);
        }
        (m, ls)
    }
}

fn renormalize(m: &mut Mat2, ls: &mut f64) {
    let s = max_abs(m);
    if !(1e-100..=1e100).contains(&s) && s > 0.0 && s.is_finite() {
        for c in m.iter_mut().flatten() {
            *c /= s;
        }
        *ls += s.ln();
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    Discrete(DiscretePotential),
    Step(StepPotential),
}

fn number(v: Option<&Value>, path: &str) -> Result<f64> {
    v.ok_or_else(|| Error::spec(path, "missing"))?.as_f64().ok_or_else(|| Error::spec(path, "expected a number"))
}

fn numbers(v: Option<&Value>, path: &str) -> Result<Vec<f64>> {
    let arr = v
        .ok_or_else(|| Error::spec(path, "missing"))?
        .as_array()
        .ok_or_else(|| Error::spec(path, "expected an array of numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(k, x)| x.as_f64().ok_or_else(|| Error::spec(format!("{path}[{k}]"), "expected a number")))
        .collect()
}

impl Potential {
    /// Parse `{"kind": "discrete", "spacing", "masses", "origin_mass"?}` or
    /// `{"kind": "step", "breakpoints", "values"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::spec("<document>", e.to_string()))?;
        let root = doc.as_object().ok_or_else(|| Error::spec("<document>", "expected an object"))?;
        match root.get("kind").and_then(Value::as_str) {
            Some("discrete") => {
                let origin = match root.get("origin_mass") {
                    None | Some(Value::Null) => 0.0,
                    v => number(v, "origin_mass")?,
                };
                Ok(Potential::Discrete(DiscretePotential::with_origin(
                    number(root.get("spacing"), "spacing")?,
                    origin,
                    numbers(root.get("masses"), "masses")?,
                )?))
            }
            Some("step") => Ok(Potential::Step(StepPotential::new(
                numbers(root.get("breakpoints"), "breakpoints")?,
                numbers(root.get("values"), "values")?,
            )?)),
            _ => Err(Error::spec("kind", "expected \"discrete\" or \"step\"")),
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Potential::Discrete(p) => p.to_value(),
            Potential::Step(p) => p.to_value(),
        };
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}

/// NLFT state at one point `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub z: Complex64,
    /// `[[a#, b#], [b, a]]`. For large `Im z * t` the top row may overflow; `a`
    /// and `b` are computed with a separate exponent and stay accurate.
    pub g: Mat2,
    /// `|det G - 1|` relative to the size of the two products in `det G`,
    /// evaluated before any overflow of the top row.
    pub det_drift: f64,
}

impl TransferMatrix {
    pub fn identity(z: Complex64) -> Self {
        TransferMatrix { z, g: IDENTITY, det_drift: 0.0 }
    }

    pub fn a(&self) -> Complex64 {
        self.g[1][1]
    }

    pub fn b(&self) -> Complex64 {
        self.g[1][0]
    }

    pub fn a_sharp(&self) -> Complex64 {
        self.g[0][0]
    }

    pub fn b_sharp(&self) -> Complex64 {
        self.g[0][1]
    }

    pub fn det(&self) -> Complex64 {
        det(&self.g)
    }

    /// The state after applying `self` and then `next` (`next.g * self.g`).
    pub fn then(&self, next: &TransferMatrix) -> TransferMatrix {
        let g = mat_mul(&next.g, &self.g);
        TransferMatrix { z: self.z, g, det_drift: drift(&g, 0.0) }
    }
}

/// `exp(c [[0, e^{-2iz tau}], [e^{2iz tau}, 0]]) = [[cosh c, e^{-2iz tau} sinh c], [e^{2iz tau} sinh c, cosh c]]`.
pub fn point_mass_factor(c: f64, tau: f64, z: Complex64) -> TransferMatrix {
    let ch = Complex64::from(c.cosh());
    let sh = c.sinh();
    let ph = (2.0 * I * z * tau).exp();
    let g = [[ch, sh / ph], [ph * sh, ch]];
    TransferMatrix { z, g, det_drift: drift(&g, 0.0) }
}

/// Ordered product of point-mass factors for the masses of `pot` (driven by `-c`).
pub fn forward_discrete(pot: &DiscretePotential, z: Complex64) -> TransferMatrix {
    // Work in the gauge G = D_tau^{-1} H with D_tau = diag(e^{iz tau}, e^{-iz tau}),
    // where each factor becomes D_{dtau} followed by the constant matrix
    // [[cosh, sinh], [sinh, cosh]]. The bottom row of H carries the growth and
    // is renormalized, so a and b do not overflow for long potentials.
    let mut h = IDENTITY;
    let mut ls = 0.0;
    let mut tau_prev = 0.0;
    for (tau, c) in pot.points() {
        let dtau = tau - tau_prev;
        if dtau != 0.0 {
            let e = (I * z * dtau).exp();
            h[0] = h[0].map(|x| x * e);
            h[1] = h[1].map(|x| x / e);
        }
        let ch = (-c).cosh();
        let sh = (-c).sinh();
        let top = [h[0][0] * ch + h[1][0] * sh, h[0][1] * ch + h[1][1] * sh];
        let bottom = [h[0][0] * sh + h[1][0] * ch, h[0][1] * sh + h[1][1] * ch];
        h = [top, bottom];
        tau_prev = tau;
        renormalize(&mut h, &mut ls);
    }
    let det_drift = drift(&h, ls);
    let down = (Complex64::from(ls) + I * z * tau_prev).exp();
    let up = (Complex64::from(ls) - I * z * tau_prev).exp();
    let g = [[h[0][0] * up, h[0][1] * up], [h[1][0] * down, h[1][1] * down]];
    TransferMatrix { z, g, det_drift }
}

/// `exp(dt A)`, `A = [[f, -z], [z, -f]]`, using `A^2 = (f^2 - z^2) I`.
pub fn step_propagator(f: f64, dt: f64, z: Complex64) -> Mat2 {
    let w2 = Complex64::from(f * f) - z * z;
    let x2 = w2 * dt * dt;
    // cosh(w dt) and sinh(w dt)/w are even in w, so only w^2 is needed.
    let (ch, sh_over_w) = if x2.norm() < 1e-8 {
        (1.0 + x2 / 2.0 + x2 * x2 / 24.0, dt * (1.0 + x2 / 6.0 + x2 * x2 / 120.0))
    } else {
        let w = w2.sqrt();
        let x = w * dt;
        (x.cosh(), x.sinh() / w)
    };
    [[ch + sh_over_w * f, -sh_over_w * z], [sh_over_w * z, ch - sh_over_w * f]]
}

/// Transform of a piecewise-constant potential via Neumann/Dirichlet solutions:
/// with `E = u - iv`, `Et = ut - i vt` from the two columns of the monodromy of
/// `-f`, `a = e^{itz}(E + i Et)/2` and `b = e^{itz}(E - i Et)/2` at `t = t_K`.
pub fn forward_continuous(pot: &StepPotential, z: Complex64) -> TransferMatrix {
    let t = pot.end();
    let (m, ls) = pot.negated().monodromy_scaled(t, z);
    let e = m[0][0] - I * m[1][0];
    let et = m[0][1] - I * m[1][1];
    let e_sharp = m[0][0] + I * m[1][0];
    let et_sharp = m[0][1] + I * m[1][1];
    let down = (Complex64::from(ls) + I * z * t).exp() / 2.0;
    let up = (Complex64::from(ls) - I * z * t).exp() / 2.0;
    let a = down * (e + I * et);
    let b = down * (e - I * et);
    let a_sharp = up * (e_sharp - I * et_sharp);
    let b_sharp = up * (e_sharp + I * et_sharp);
    let det_drift = drift(&m, ls);
    TransferMatrix { z, g: [[a_sharp, b_sharp], [b, a]], det_drift }
}

pub fn forward(pot: &Potential, z: Complex64) -> TransferMatrix {
    match pot {
        Potential::Discrete(p) => forward_discrete(p, z),
        Potential::Step(p) => forward_continuous(p, z),
    }
}

/// Value of a Schur function at `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurValue {
    pub z: Complex64,
    pub value: Complex64,
}

/// `b/a`.
pub fn schur_ratio(tm: &TransferMatrix) -> Result<SchurValue> {
    let a = tm.a();
    if a == Complex64::new(0.0, 0.0) || !a.is_finite() {
        return Err(Error::Resonance { z: tm.z });
    }
    Ok(SchurValue { z: tm.z, value: tm.b() / a })
}

/// `|a| = 1/sqrt(1 - |s|^2)` on the real line.
pub fn magnitude_a_from_schur(s: Complex64) -> Result<f64> {
    let m2 = s.norm_sqr();
    if m2 >= 1.0 {
        return Err(Error::NotContractive(m2.sqrt()));
    }
    Ok(1.0 / (1.0 - m2).sqrt())
}

/// Linear Fourier transform `sum c_n e^{2iz t_n}`.
pub fn fourier_linear(pot: &DiscretePotential, z: Complex64) -> Complex64 {
    pot.points().map(|(tau, c)| c * (2.0 * I * z * tau).exp()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factor_closed_form() {
        let f = point_mass_factor(0.0, 1.3, c(0.4, 0.2));
        assert_eq!((f.a(), f.b()), (c(1.0, 0.0), c(0.0, 0.0)));
        let f = point_mass_factor(0.7, 0.0, c(0.4, 0.2));
        assert!((f.a() - 0.7f64.cosh()).norm() < 1e-15 && (f.b() - 0.7f64.sinh()).norm() < 1e-15);
        let z = c(0.3, 0.5);
        let ratio = point_mass_factor(0.7, 2.5, z).b() / point_mass_factor(0.7, 0.0, z).b();
        assert!((ratio - (2.0 * I * z * 2.5).exp()).norm() < 1e-14);
        // Compare with a truncated power series of the exponential.
        let tau = 0.8;
        let m: Mat2 = [[c(0.0, 0.0), 0.7 * (-2.0 * I * z * tau).exp()], [0.7 * (2.0 * I * z * tau).exp(), c(0.0, 0.0)]];
        let mut term = IDENTITY;
        let mut sum = IDENTITY;
        for k in 1..40 {
            term = mat_mul(&term, &m).map(|r| r.map(|x| x / k as f64));
            for i in 0..2 {
                for j in 0..2 {
                    sum[i][j] += term[i][j];
                }
            }
        }
        let f = point_mass_factor(0.7, tau, z);
        for i in 0..2 {
            for j in 0..2 {
                assert!((sum[i][j] - f.g[i][j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn discrete_matches_factor_product() {
        let pot = DiscretePotential::with_origin(0.5, 0.2, vec![0.3, -0.4, 0.1]).unwrap();
        let z = c(0.7, 0.3);
        let mut g = TransferMatrix::identity(z);
        for (tau, m) in pot.points() {
            g = g.then(&point_mass_factor(-m, tau, z));
        }
        let f = forward_discrete(&pot, z);
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.g[i][j] - f.g[i][j]).norm() < 1e-14);
            }
        }
        assert!(f.det_drift < 1e-14);
    }

    #[test]
    fn empty_potential_is_identity() {
        let f = forward_discrete(&DiscretePotential::new(1.0, vec![]).unwrap(), c(1.0, 1.0));
        assert_eq!(f.g, IDENTITY);
    }

    #[test]
    fn single_mass() {
        let z = c(0.2, 0.9);
        let f = forward_discrete(&DiscretePotential::new(1.0, vec![0.6]).unwrap(), z);
        assert!((f.a() - 0.6f64.cosh()).norm() < 1e-15);
        assert!((f.b() + (2.0 * I * z).exp() * 0.6f64.sinh()).norm() < 1e-15);
    }

    #[test]
    fn long_potential_does_not_overflow() {
        let pot = DiscretePotential::new(0.5, vec![0.01; 4000]).unwrap();
        let f = forward_discrete(&pot, c(0.1, 2.0));
        assert!(f.a().is_finite() && f.b().is_finite());
        assert!(schur_ratio(&f).unwrap().value.norm() < 1.0);
    }

    #[test]
    fn free_propagator_rotation() {
        let (z, dt) = (1.7, 0.4);
        let p = step_propagator(0.0, dt, c(z, 0.0));
        let (co, si) = ((z * dt).cos(), (z * dt).sin());
        let expect = [[co, -si], [si, co]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[i][j] - expect[i][j]).norm() < 1e-15);
            }
        }
        let p = step_propagator(0.3, 1e-12, c(2.0, 1.0));
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[i][j] - IDENTITY[i][j]).norm() <= 1e-11);
            }
        }
        assert!((det(&step_propagator(0.8, 2.0, c(0.3, 0.4))) - 1.0).norm() < 1e-13);
    }

    #[test]
    fn propagator_series_branch_is_continuous() {
        let z = c(0.5, 0.0);
        let f = 0.5 + 1e-6;
        let near = step_propagator(f, 0.01, z);
        let far = step_propagator(f, 0.01 + 1e-3, z);
        assert!((near[0][1] - far[0][1]).norm() < 1e-3);
        // Exact hyperbolic form for w^2 = f^2 - z^2 slightly positive.
        let w = (f * f - 0.25f64).sqrt();
        assert!((near[0][0] - ((w * 0.01).cosh() + (w * 0.01).sinh() / w * f)).norm() < 1e-14);
    }

    #[test]
    fn zero_step_potential() {
        let pot = StepPotential::new(vec![0.0, 1.0, 2.5], vec![0.0, 0.0]).unwrap();
        for z in [c(0.3, 0.0), c(-2.0, 1.0), c(5.0, 0.01)] {
            let f = forward_continuous(&pot, z);
            assert!((f.a() - 1.0).norm() < 1e-13 && f.b().norm() < 1e-13);
        }
    }

    #[test]
    fn narrow_step_is_a_point_mass() {
        let s = 0.4;
        let dt = 1e-7;
        let pot = StepPotential::new(vec![0.0, dt], vec![s / dt]).unwrap();
        let f = forward_continuous(&pot, c(0.0, 0.0));
        let p = forward_discrete(&DiscretePotential::with_origin(1.0, s, vec![]).unwrap(), c(0.0, 0.0));
        assert!((f.a() - p.a()).norm() < 1e-9 && (f.b() - p.b()).norm() < 1e-9);
    }

    #[test]
    fn continuous_agrees_with_discrete_bumps() {
        // A bump of width w at position tau approximates a point mass there.
        let w = 1e-5;
        let pot = StepPotential::new(vec![0.0, 1.0 - w, 1.0, 2.0 - w, 2.0], vec![0.0, 0.3 / w, 0.0, -0.2 / w]).unwrap();
        let disc = DiscretePotential::new(1.0, vec![0.3, -0.2]).unwrap();
        for z in [c(0.4, 0.0), c(1.1, 0.5)] {
            let f = forward_continuous(&pot, z);
            let d = forward_discrete(&disc, z);
            assert!((f.a() - d.a()).norm() < 1e-4 && (f.b() - d.b()).norm() < 1e-4, "{:?} {:?}", f.g, d.g);
        }
    }

    #[test]
    fn schur_and_magnitude() {
        assert_eq!(schur_ratio(&TransferMatrix::identity(c(0.0, 1.0))).unwrap().value, c(0.0, 0.0));
        assert_eq!(magnitude_a_from_schur(c(0.0, 0.0)).unwrap(), 1.0);
        assert!(magnitude_a_from_schur(c(0.6, 0.8)).is_err());
        let tm = TransferMatrix { z: c(0.0, 0.0), g: [[c(1.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]], det_drift: 0.0 };
        assert!(matches!(schur_ratio(&tm), Err(Error::Resonance { .. })));
    }

    #[test]
    fn fourier_linear_single() {
        let z = c(0.3, 0.2);
        assert_eq!(fourier_linear(&DiscretePotential::new(1.0, vec![]).unwrap(), z), c(0.0, 0.0));
        let pot = DiscretePotential::new(0.5, vec![0.0, 0.0, 1.5]).unwrap();
        assert!((fourier_linear(&pot, z) - 1.5 * (2.0 * I * z * 1.5).exp()).norm() < 1e-15);
    }

    #[test]
    fn potential_json() {
        let p = Potential::from_json(r#"{"kind":"discrete","spacing":0.5,"masses":[1,2]}"#).unwrap();
        assert_eq!(p, Potential::Discrete(DiscretePotential::new(0.5, vec![1.0, 2.0]).unwrap()));
        assert_eq!(Potential::from_json(&p.to_json()).unwrap(), p);
        let s = Potential::from_json(r#"{"kind":"step","breakpoints":[0,1],"values":[0.3]}"#).unwrap();
        assert_eq!(Potential::from_json(&s.to_json()).unwrap(), s);
        let e = Potential::from_json(r#"{"kind":"step","breakpoints":[0,1,1],"values":[0.3,1]}"#).unwrap_err();
        assert!(e.to_string().starts_with("breakpoints[2]"));
    }
}
