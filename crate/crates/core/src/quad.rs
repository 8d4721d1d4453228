//! Adaptive Gauss-Kronrod (G7/K15) quadrature for real or complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values that can be integrated: real or complex scalars.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Tolerances and subdivision budget.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Quad {
    pub fn new(abs_tol: f64) -> Self {
        Quad { abs_tol, rel_tol: 0.0, max_intervals: 4000 }
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<T: QuadValue>(&self, f: impl Fn(f64) -> T, a: f64, b: f64) -> Result<T> {
        self.integrate_with_breaks(f, &[a, b])
    }

    /// Integrate over `[pts[0], pts[last]]`, starting from the subdivision given by `pts`.
    /// `pts` must be sorted; duplicates are skipped.
    pub fn integrate_with_breaks<T: QuadValue>(&self, f: impl Fn(f64) -> T, pts: &[f64]) -> Result<T> {
        let mut heap = BinaryHeap::new();
        let mut total = T::zero();
        let mut err = 0.0;
        for w in pts.windows(2) {
            if w[1] > w[0] {
                let seg = Segment::eval(&f, w[0], w[1]);
                total = total + seg.value;
                err += seg.err;
                heap.push(seg);
            }
        }
        while let Some(worst) = heap.peek() {
            let target = self.abs_tol.max(self.rel_tol * total.magnitude());
            if err <= target {
                break;
            }
            if heap.len() >= self.max_intervals {
                return Err(Error::Quadrature(self.max_intervals));
            }
            let (a, b) = (worst.a, worst.b);
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                // Interval can no longer be split in floating point.
                return Err(Error::Quadrature(heap.len()));
            }
            let worst = heap.pop().expect("peeked");
            let left = Segment::eval(&f, a, mid);
            let right = Segment::eval(&f, mid, b);
            total = total - worst.value + left.value + right.value;
            err += left.err + right.err - worst.err;
            heap.push(left);
            heap.push(right);
        }
        // Re-sum to shed accumulated rounding from the running updates.
        Ok(heap.into_iter().fold(T::zero(), |acc, s| acc + s.value))
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

impl<T: QuadValue> Segment<T> {
    fn eval(f: &impl Fn(f64) -> T, a: f64, b: f64) -> Self {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let fc = f(c);
        let mut kron = fc * WGK[7];
        let mut gauss = fc * WG[3];
        for j in 0..7 {
            let dx = h * XGK[j];
            let s = f(c - dx) + f(c + dx);
            kron = kron + s * WGK[j];
            if j % 2 == 1 {
                gauss = gauss + s * WG[j / 2];
            }
        }
        let value = kron * h;
        let err = ((kron - gauss) * h).magnitude();
        Segment { a, b, value, err }
    }
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = Quad::new(1e-14);
        let v = q.integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0).unwrap();
        assert!((v - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn peaked_lorentzian() {
        let y = 1e-3;
        let q = Quad::new(1e-12);
        let v = q.integrate_with_breaks(|t| y / (t * t + y * y), &[-1.0, 0.0, 1.0]).unwrap();
        let exact = 2.0 * (1.0 / y).atan();
        assert!((v - exact).abs() < 1e-10, "{v} vs {exact}");
    }

    #[test]
    fn complex_integrand() {
        let q = Quad::new(1e-13);
        let v = q.integrate(|t| Complex64::new(0.0, t).exp(), 0.0, std::f64::consts::PI).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let q = Quad { abs_tol: 1e-15, rel_tol: 0.0, max_intervals: 8 };
        let r = q.integrate(|t: f64| (40.0 * t).sin() / t.abs().sqrt().max(1e-3), -1.0, 1.3);
        assert!(matches!(r, Err(Error::Quadrature(_))));
    }
}
