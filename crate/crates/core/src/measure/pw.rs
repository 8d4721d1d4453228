//! Heuristic Paley-Wiener diagnostics. Advisory only.

use super::Measure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwVerdict {
    ConsistentWithPw,
    FailsBoundedness,
    FailsLocallyInfiniteSupport,
    FailsIntervalDensity,
}

impl PwVerdict {
    pub fn describe(self) -> &'static str {
        match self {
            PwVerdict::ConsistentWithPw => "consistent with PW",
            PwVerdict::FailsBoundedness => "fails boundedness",
            PwVerdict::FailsLocallyInfiniteSupport => "fails locally infinite support",
            PwVerdict::FailsIntervalDensity => "fails interval density",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PwReport {
    pub window: (f64, f64),
    /// sup of `mu([k, k+1))` over integers `k` with `[k, k+1)` inside the window.
    pub sup_unit_mass: f64,
    /// Same sup restricted to the central half of the window.
    pub sup_unit_mass_central: f64,
    /// Whether the support has infinitely many points per unit length.
    pub locally_infinite_support: bool,
    /// Atoms per period (periodic measures) or in total.
    pub atom_count: usize,
    /// Largest `delta` with at least `d |I|` disjoint `(mu, delta)`-intervals meeting the window.
    pub max_delta: f64,
    pub verdict: PwVerdict,
}

impl Measure {
    pub fn pw_diagnostic(&self, window: (f64, f64), d: f64) -> PwReport {
        let (lo, hi) = window;
        let sup_unit = |a: f64, b: f64| {
            let mut k = a.ceil();
            let mut best: f64 = 0.0;
            while k + 1.0 <= b {
                best = best.max(self.mass_in(k, k + 1.0));
                k += 1.0;
            }
            best
        };
        let sup_unit_mass = sup_unit(lo, hi);
        let c = 0.5 * (lo + hi);
        let q = 0.25 * (hi - lo);
        let sup_unit_mass_central = sup_unit(c - q, c + q);
        let locally_infinite_support = !self.density().is_zero();
        let atom_count = self.atoms().len();
        let len = hi - lo;
        let need = (d * len).ceil().max(1.0) as usize;
        let max_delta = largest_delta(self, lo, hi, need);

        let verdict = if sup_unit_mass > 1.5 * sup_unit_mass_central {
            PwVerdict::FailsBoundedness
        } else if !locally_infinite_support {
            PwVerdict::FailsLocallyInfiniteSupport
        } else if max_delta <= 0.0 {
            PwVerdict::FailsIntervalDensity
        } else {
            PwVerdict::ConsistentWithPw
        };
        PwReport {
            window,
            sup_unit_mass,
            sup_unit_mass_central,
            locally_infinite_support,
            atom_count,
            max_delta,
            verdict,
        }
    }
}

/// Greedy count of disjoint intervals `[x, y)` with `y - x > delta` and
/// `mu([x, y)) > delta`, packed left to right from the window start; stops at `cap`.
fn greedy_count(mu: &Measure, lo: f64, hi: f64, delta: f64, cap: usize) -> usize {
    let reach = hi - lo;
    let mut x = lo;
    let mut count = 0;
    while x < hi && count < cap {
        let y0 = x + delta * (1.0 + 1e-12) + 1e-300;
        let y = if mu.mass_in(x, y0) > delta {
            y0
        } else if mu.mass_in(x, x + reach) <= delta {
            break;
        } else {
            let (mut a, mut b) = (y0, x + reach);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if mu.mass_in(x, m) > delta {
                    b = m;
                } else {
                    a = m;
                }
            }
            b
        };
        count += 1;
        x = y;
    }
    count
}

fn largest_delta(mu: &Measure, lo: f64, hi: f64, need: usize) -> f64 {
    let floor = 1e-9;
    if greedy_count(mu, lo, hi, floor, need) < need {
        return 0.0;
    }
    let (mut a, mut b) = (floor, hi - lo);
    if greedy_count(mu, lo, hi, b, need) >= need {
        return b;
    }
    for _ in 0..60 {
        let m = (a * b).sqrt();
        if greedy_count(mu, lo, hi, m, need) >= need {
            a = m;
        } else {
            b = m;
        }
    }
    a
}
