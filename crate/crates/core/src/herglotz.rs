//! Schwarz, Poisson and conjugate-Poisson transforms of measures, and the
//! Schur function `(S_mu - 1)/(S_mu + 1)`.
//!
//! `S_mu(z) = (1/(pi i)) int (1/(t - z) - t/(1 + t^2)) dmu(t) = P_mu(z) + i Q_mu(z)`.
//! Periodic measures are summed over all translates in closed form: the
//! symmetric partial sums of `1/(x + mP - z)` converge to `(pi/P) cot(pi (x - z)/P)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::measure::{reduce, Density, Measure, Table};
use crate::nlft::{SchurValue, StepPotential};
use crate::quad::Quad;
use crate::{Error, Result, I};

/// Distance below which a real `z` counts as lying on an atom or on the density support.
pub const REAL_AXIS_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HerglotzValue {
    pub z: Complex64,
    pub value: Complex64,
}

/// Robust complex cotangent, accurate for large `|Im w|`.
pub fn cot(w: Complex64) -> Complex64 {
    if w.im < 0.0 {
        let q = (-2.0 * I * w).exp();
        I * (1.0 + q) / (1.0 - q)
    } else {
        let q = (2.0 * I * w).exp();
        -I * (1.0 + q) / (1.0 - q)
    }
}

/// `cot(u) - 1/u`, analytic for `|u| < pi`.
fn cot_minus_pole(u: Complex64) -> Complex64 {
    if u.norm() < 0.1 {
        let u2 = u * u;
        -u * (1.0 / 3.0 + u2 * (1.0 / 45.0 + u2 * (2.0 / 945.0 + u2 * (1.0 / 4725.0 + u2 * (2.0 / 93555.0)))))
    } else {
        cot(u) - 1.0 / u
    }
}

/// `cot(w) - 1/w - 1/(w - pi) - 1/(w + pi)` for `Re w` in `[-pi, pi]`.
fn cot_remainder(w: Complex64) -> Complex64 {
    if w.re > 0.5 * PI {
        let u = w - PI;
        cot_minus_pole(u) - 1.0 / (u + PI) - 1.0 / (u + 2.0 * PI)
    } else if w.re < -0.5 * PI {
        let u = w + PI;
        cot_minus_pole(u) - 1.0 / (u - PI) - 1.0 / (u - 2.0 * PI)
    } else {
        cot_minus_pole(w) - 1.0 / (w - PI) - 1.0 / (w + PI)
    }
}

/// `int_{x0}^{x1} rho(t)/(t - w) dt` for `rho` linear from `y0` to `y1`, `w` off the segment.
fn segment_cauchy(x0: f64, x1: f64, y0: f64, y1: f64, w: Complex64) -> Complex64 {
    let s = (y1 - y0) / (x1 - x0);
    let alpha = y0 - s * x0;
    s * (x1 - x0) + (alpha + s * w) * ln_1p((x1 - x0) / (x0 - w))
}

/// `ln(1 + u)`, accurate for small `|u|`. With `u = (x1 - x0)/(x0 - w)` and
/// `Im w >= 0` this equals `ln(x1 - w) - ln(x0 - w)` with principal logs.
fn ln_1p(u: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    Complex64::new(re, u.im.atan2(1.0 + u.re))
}

fn table_cauchy(t: &Table, w: Complex64) -> Complex64 {
    t.segments()
        .filter(|&(_, _, y0, y1)| y0 != 0.0 || y1 != 0.0)
        .map(|(x0, x1, y0, y1)| segment_cauchy(x0, x1, y0, y1, w))
        .sum()
}

fn check_z(mu: &Measure, z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.im < 0.0 {
        return Err(Error::InvalidArgument(format!("z = {z} must lie in the closed upper half-plane")));
    }
    let dist = |x: f64| match mu.period() {
        None => (z - x).norm(),
        Some(p) => Complex64::new(reduce(z.re - x, p), z.im).norm(),
    };
    if mu.atoms().iter().any(|a| dist(a.x) < REAL_AXIS_GAP) {
        return Err(Error::OnAtom { z });
    }
    if z.im < REAL_AXIS_GAP {
        let x = match mu.period() {
            None => z.re,
            Some(p) => reduce(z.re, p),
        };
        let on = match mu.density() {
            Density::None => false,
            Density::Constant(c) => *c > 0.0,
            Density::Table(t) => {
                let near = |a: f64, b: f64| x >= a - REAL_AXIS_GAP && x <= b + REAL_AXIS_GAP;
                t.support().iter().any(|&(a, b)| {
                    near(a, b)
                        || mu.period().is_some_and(|p| near(a - p, b - p) || near(a + p, b + p))
                })
            }
        };
        if on {
            return Err(Error::OnSupport { z });
        }
    }
    Ok(())
}

/// Schwarz transform `S_mu(z)`; `tol` bounds the quadrature error where quadrature is used.
pub fn schwarz_transform(mu: &Measure, z: Complex64, tol: f64) -> Result<HerglotzValue> {
    check_z(mu, z)?;
    let value = match mu.period() {
        None => schwarz_line(mu, z),
        Some(p) => schwarz_periodic(mu, z, p, tol)?,
    };
    Ok(HerglotzValue { z, value })
}

fn schwarz_line(mu: &Measure, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in mu.atoms() {
        acc += a.mass * (1.0 / (a.x - z) - a.x / (1.0 + a.x * a.x));
    }
    let mut s = acc / (PI * I);
    match mu.density() {
        Density::None => {}
        Density::Constant(c) => s += *c,
        Density::Table(t) => s += (table_cauchy(t, z) - table_cauchy(t, I).re) / (PI * I),
    }
    s
}

fn schwarz_periodic(mu: &Measure, z: Complex64, p: f64, tol: f64) -> Result<Complex64> {
    let k = PI / p;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in mu.atoms() {
        acc += a.mass * (cot(k * (a.x - z)) - cot(k * (a.x - I)).re);
    }
    let mut s = acc / (I * p);
    match mu.density() {
        Density::None => {}
        Density::Constant(c) => s += *c,
        Density::Table(t) => {
            // Reduce Re z into the window and take the three nearest poles of the
            // cotangent out analytically; the remainder is smooth on the window.
            let zr = Complex64::new(reduce(z.re, p), z.im);
            let mut poles = Complex64::new(0.0, 0.0);
            for m in [-1.0, 0.0, 1.0] {
                poles += table_cauchy(t, zr + m * p);
            }
            let quad = Quad::new(0.25 * tol * p);
            let smooth = quad.integrate_with_breaks(|x| t.eval(x) * cot_remainder(k * (x - zr)), t.xs())?;
            let norm = quad.integrate_with_breaks(|x| t.eval(x) * cot(k * Complex64::new(x, -1.0)).re, t.xs())?;
            s += (poles / k + smooth - norm) / (I * p);
        }
    }
    Ok(s)
}

/// `(S - 1)/(S + 1)`.
pub fn schur_from_measure(mu: &Measure, z: Complex64, tol: f64) -> Result<SchurValue> {
    let s = schwarz_transform(mu, z, tol)?.value;
    if (s + 1.0).norm() < 1e-14 {
        return Err(Error::SchurPole { z });
    }
    Ok(SchurValue { z, value: (s - 1.0) / (s + 1.0) })
}

fn check_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("z = {z} must have positive imaginary part")))
    }
}

/// `(1 - q^2, 1 + q^2 - 2 q cos b)` with `q = e^{-a}`: the ratios
/// `sinh a/(cosh a - cos b)` and `sin b/(cosh a - cos b)` without overflow.
fn periodic_kernels(a: f64, b: f64) -> (f64, f64) {
    let q = (-a).exp();
    let den = 1.0 + q * q - 2.0 * q * b.cos();
    ((1.0 - q * q) / den, 2.0 * q * b.sin() / den)
}

fn density_breaks(t: &Table, extra: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = t.xs().to_vec();
    pts.extend(extra.iter().copied().filter(|&x| x > t.lo() && x < t.hi()));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Poisson integral `P_mu(z) = (1/pi) int y/((t - x)^2 + y^2) dmu(t)` by real kernels.
pub fn poisson_integral(mu: &Measure, z: Complex64, tol: f64) -> Result<f64> {
    check_upper(z)?;
    let (x, y) = (z.re, z.im);
    match mu.period() {
        None => {
            let kern = |t: f64| y / ((t - x) * (t - x) + y * y) / PI;
            let mut v: f64 = mu.atoms().iter().map(|a| a.mass * kern(a.x)).sum();
            v += match mu.density() {
                Density::None => 0.0,
                Density::Constant(c) => *c,
                Density::Table(t) => Quad::new(tol).integrate_with_breaks(|s| t.eval(s) * kern(s), &density_breaks(t, &[x]))?,
            };
            Ok(v)
        }
        Some(p) => {
            let a = 2.0 * PI / p;
            let kern = |t: f64| periodic_kernels(a * y, a * (t - x)).0 / p;
            let mut v: f64 = mu.atoms().iter().map(|at| at.mass * kern(at.x)).sum();
            v += match mu.density() {
                Density::None => 0.0,
                Density::Constant(c) => *c,
                Density::Table(t) => {
                    let xr = reduce(x, p);
                    let br = density_breaks(t, &[xr - p, xr, xr + p]);
                    Quad::new(tol).integrate_with_breaks(|s| t.eval(s) * kern(s), &br)?
                }
            };
            Ok(v)
        }
    }
}

/// Conjugate Poisson integral `Q_mu(z) = (1/pi) int ((x - t)/((x - t)^2 + y^2) + t/(1 + t^2)) dmu(t)`.
pub fn conjugate_poisson_integral(mu: &Measure, z: Complex64, tol: f64) -> Result<f64> {
    check_upper(z)?;
    let (x, y) = (z.re, z.im);
    match mu.period() {
        None => {
            let kern = |t: f64| ((x - t) / ((x - t) * (x - t) + y * y) + t / (1.0 + t * t)) / PI;
            let mut v: f64 = mu.atoms().iter().map(|a| a.mass * kern(a.x)).sum();
            if let Density::Table(t) = mu.density() {
                v += Quad::new(tol).integrate_with_breaks(|s| t.eval(s) * kern(s), &density_breaks(t, &[x]))?;
            }
            Ok(v)
        }
        Some(p) => {
            let a = 2.0 * PI / p;
            let kern = |t: f64| (-periodic_kernels(a * y, a * (t - x)).1 + periodic_kernels(a, a * t).1) / p;
            let mut v: f64 = mu.atoms().iter().map(|at| at.mass * kern(at.x)).sum();
            if let Density::Table(t) = mu.density() {
                let xr = reduce(x, p);
                let br = density_breaks(t, &[xr - p, xr, xr + p]);
                v += Quad::new(tol).integrate_with_breaks(|s| t.eval(s) * kern(s), &br)?;
            }
            Ok(v)
        }
    }
}

/// Truncated Clark-measure check for one pair of monodromy entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ClarkResidual {
    pub zeros: usize,
    /// The ratio (`B/A`, or `D/C` for the companion identity) at `z0`.
    pub ratio: Complex64,
    /// Truncated Schwarz sum of the Clark masses at `z0`.
    pub schwarz: Complex64,
    /// `|ratio - (-i S)|`.
    pub residual: f64,
    /// `|ratio - (-i / S)|`, the form `B/A = -i/S`.
    pub residual_inverse_form: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClarkReport {
    pub a_identity: ClarkResidual,
    pub c_identity: Option<ClarkResidual>,
}

/// Clark measures of the monodromy `M(b, .) = [[A, B], [C, D]]` of the Dirac
/// system with potential `pot`: masses `-pi/(A' C)` at the real zeros of `A`
/// (and `pi/(A C')` at the zeros of `C`) inside `[-r, r]`.
pub fn validate_clark_identity(
    pot: &StepPotential,
    b: f64,
    z0: Complex64,
    r: f64,
    companion: bool,
) -> Result<ClarkReport> {
    check_upper(z0)?;
    if !(b > 0.0 && r > 0.0) {
        return Err(Error::InvalidArgument("b and R must be positive".into()));
    }
    let entry = |x: f64, i: usize, j: usize| pot.monodromy(b, Complex64::from(x))[i][j].re;
    let m0 = pot.monodromy(b, z0);
    let a_identity = clark_residual(
        &|x| entry(x, 0, 0),
        &|x| {
            let h = 1e-6 * (1.0 + x.abs());
            -PI / ((entry(x + h, 0, 0) - entry(x - h, 0, 0)) / (2.0 * h) * entry(x, 1, 0))
        },
        m0[0][1] / m0[0][0],
        "A",
        b,
        z0,
        r,
    )?;
    let c_identity = if companion {
        Some(clark_residual(
            &|x| entry(x, 1, 0),
            &|x| {
                let h = 1e-6 * (1.0 + x.abs());
                PI / ((entry(x + h, 1, 0) - entry(x - h, 1, 0)) / (2.0 * h) * entry(x, 0, 0))
            },
            m0[1][1] / m0[1][0],
            "C",
            b,
            z0,
            r,
        )?)
    } else {
        None
    };
    Ok(ClarkReport { a_identity, c_identity })
}

fn clark_residual(
    f: &dyn Fn(f64) -> f64,
    mass: &dyn Fn(f64) -> f64,
    ratio: Complex64,
    which: &'static str,
    b: f64,
    z0: Complex64,
    r: f64,
) -> Result<ClarkResidual> {
    let h = 0.02 / b.max(1.0);
    let n = (2.0 * r / h).ceil() as usize;
    let mut zeros = Vec::new();
    let mut x_prev = -r;
    let mut f_prev = f(x_prev);
    for k in 1..=n {
        let x = -r + 2.0 * r * k as f64 / n as f64;
        let fx = f(x);
        if fx == 0.0 {
            zeros.push(x);
        } else if f_prev != 0.0 && f_prev.signum() != fx.signum() {
            let (mut lo, mut hi, mut flo) = (x_prev, x, f_prev);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    if zeros.is_empty() {
        return Err(Error::NoZeros(which));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &x in &zeros {
        let m = mass(x);
        if !m.is_finite() {
            return Err(Error::DegenerateZero { which, x });
        }
        acc += m * (1.0 / (x - z0) - x / (1.0 + x * x));
    }
    let schwarz = acc / (PI * I);
    Ok(ClarkResidual {
        zeros: zeros.len(),
        ratio,
        schwarz,
        residual: (ratio + I * schwarz).norm(),
        residual_inverse_form: (ratio + I / schwarz).norm(),
    })
}
