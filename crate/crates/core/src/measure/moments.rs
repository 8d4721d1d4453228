use std::f64::consts::PI;

use super::{Density, Measure};
use crate::{Error, Result};

/// Cosine coefficients `a_0..a_N` of an even `2T`-periodic measure:
/// `a_0 = mu([-T, T))/(2T)`, `a_n = (1/T) * int cos(n pi x / T) dmu`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigMoments {
    half_period: f64,
    coeffs: Vec<f64>,
}

impl TrigMoments {
    pub fn new(half_period: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(half_period.is_finite() && half_period > 0.0) {
            return Err(Error::InvalidArgument(format!("half period {half_period} must be positive")));
        }
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("moments must be a non-empty list of finite numbers".into()));
        }
        Ok(TrigMoments { half_period, coeffs })
    }

    pub fn half_period(&self) -> f64 {
        self.half_period
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Width `pi/(2T)` of the Hamiltonian steps these moments produce.
    pub fn step_width(&self) -> f64 {
        PI / (2.0 * self.half_period)
    }

    /// Entry `(i, j)` of the Toeplitz matrix: `a_0` on the diagonal, `a_k/2` off it.
    pub fn toeplitz_entry(&self, i: usize, j: usize) -> f64 {
        let k = i.abs_diff(j);
        if k == 0 {
            self.coeffs[0]
        } else {
            0.5 * self.coeffs[k]
        }
    }
}

/// `int_{x0}^{x1} (y0 + s (x - x0)) cos(w x) dx` for the linear density through the endpoints.
fn segment_cos(x0: f64, x1: f64, y0: f64, y1: f64, w: f64) -> f64 {
    if w == 0.0 {
        return 0.5 * (y0 + y1) * (x1 - x0);
    }
    let s = (y1 - y0) / (x1 - x0);
    let anti = |x: f64, y: f64| y * (w * x).sin() / w + s * (w * x).cos() / (w * w);
    anti(x1, y1) - anti(x0, y0)
}

impl Measure {
    /// Cosine moments `a_0..a_{n_max}`; atoms and densities integrate exactly.
    pub fn trig_moments(&self, n_max: usize) -> Result<TrigMoments> {
        let t = self
            .half_period()
            .ok_or_else(|| Error::InvalidArgument("trig_moments needs a periodic measure".into()))?;
        self.check_even()?;
        let mut coeffs = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let w = n as f64 * PI / t;
            let mut acc: f64 = self.atoms().iter().map(|a| a.mass * (w * a.x).cos()).sum();
            acc += match self.density() {
                Density::None => 0.0,
                Density::Constant(c) => {
                    if n == 0 {
                        2.0 * t * c
                    } else {
                        0.0
                    }
                }
                Density::Table(tab) => tab.segments().map(|(x0, x1, y0, y1)| segment_cos(x0, x1, y0, y1, w)).sum(),
            };
            coeffs.push(if n == 0 { acc / (2.0 * t) } else { acc / t });
        }
        TrigMoments::new(t, coeffs)
    }
}
