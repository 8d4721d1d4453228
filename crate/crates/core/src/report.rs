//! CSV writers. Numbers carry 17 significant digits; lines end in LF.

use std::fmt::Write;

use crate::converge::{ConvergenceRow, Figure1};
use crate::inverse::StepHamiltonian;
use crate::nlft::DiscretePotential;
use crate::Complex64;

/// Shortest scientific form with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub const SWEEP_HEADER: &str = "T,z_re,z_im,approx_re,approx_im,target_re,target_im,abs_err";
pub const INVERSE_HEADER: &str = "n,t_n,h11,mass";
pub const FIGURE1_HEADER: &str = "t,scaled_mass,oracle_f";
pub const FORWARD_HEADER: &str = "z_re,z_im,schur_re,schur_im,abs_a,abs_b";

pub fn sweep_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let cells = [r.t, r.z.re, r.z.im, r.approx.re, r.approx.im, r.target.re, r.target.im, r.abs_err];
        writeln!(out, "{}", cells.map(num).join(",")).unwrap();
    }
    out
}

/// One row per step `n = 0..N-1`: `t_n = n w`, `h_n`, and the mass at `t_n`
/// (the origin mass for `n = 0`).
pub fn inverse_csv(h: &StepHamiltonian, pot: &DiscretePotential) -> String {
    let mut out = format!("{INVERSE_HEADER}\n");
    for (n, hn) in h.steps().iter().enumerate() {
        let mass = if n == 0 { pot.origin_mass() } else { pot.masses()[n - 1] };
        writeln!(out, "{n},{},{},{}", num(n as f64 * h.step_width()), num(*hn), num(mass)).unwrap();
    }
    out
}

pub fn figure1_csv(fig: &Figure1) -> String {
    let mut out = format!("{FIGURE1_HEADER}\n");
    for r in &fig.rows {
        writeln!(out, "{},{},{}", num(r.t), num(r.scaled_mass), num(r.oracle_f)).unwrap();
    }
    out
}

pub fn forward_csv(rows: &[(Complex64, Complex64, f64, f64)]) -> String {
    let mut out = format!("{FORWARD_HEADER}\n");
    for (z, s, a, b) in rows {
        writeln!(out, "{}", [z.re, z.im, s.re, s.im, *a, *b].map(num).join(",")).unwrap();
    }
    out
}
