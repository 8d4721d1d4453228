//! Randomized property checks of the library's invariants, run by `nlft check`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::converge::{default_zgrid, roundtrip_residual};
use crate::herglotz::{
    conjugate_poisson_integral, poisson_integral, schur_from_measure, schwarz_transform, validate_clark_identity,
};
use crate::inverse::{
    inverse_sums, opuc_h11, toeplitz_h11_with, InverseMethod, ToeplitzSolver, ToeplitzSystem,
};
use crate::measure::{Atom, Density, Measure, Table, TrigMoments};
use crate::nlft::{
    forward_continuous, forward_discrete, fourier_linear, schur_ratio, DiscretePotential, StepPotential,
};
use crate::quad::Quad;
use crate::{Result, I};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const INSTANCES: usize = 100;

pub fn random_discrete(rng: &mut StdRng) -> DiscretePotential {
    let n = rng.gen_range(1..=20);
    let masses = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    DiscretePotential::with_origin(rng.gen_range(0.2..1.0), rng.gen_range(-0.5..0.5), masses).unwrap()
}

/// Like [`random_discrete`], rescaled so that the total variation is at most `tv_max`.
pub fn random_discrete_bounded(rng: &mut StdRng, tv_max: f64) -> DiscretePotential {
    let p = random_discrete(rng);
    let target = rng.gen_range(0.0..tv_max);
    p.scaled(target / p.total_variation())
}

pub fn random_step(rng: &mut StdRng, amp: f64) -> StepPotential {
    let k = rng.gen_range(1..=4);
    let mut bp = vec![0.0];
    for _ in 0..k {
        let last = *bp.last().unwrap();
        bp.push(last + rng.gen_range(0.2..1.0));
    }
    let values = (0..k).map(|_| rng.gen_range(-amp..amp)).collect();
    StepPotential::new(bp, values).unwrap()
}

/// Even periodic measure with positive constant density and symmetric atom pairs.
pub fn random_even_measure(rng: &mut StdRng) -> Measure {
    let t = rng.gen_range(1.0..5.0);
    let mut atoms = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let x = rng.gen_range(0.05..0.95) * t;
        let m = rng.gen_range(0.1..2.0);
        atoms.push(Atom { x, mass: m });
        atoms.push(Atom { x: -x, mass: m });
    }
    if rng.gen_bool(0.5) {
        atoms.push(Atom { x: 0.0, mass: rng.gen_range(0.1..3.0) });
    }
    Measure::new(Density::Constant(rng.gen_range(0.2..2.0)), atoms, Some(2.0 * t)).unwrap()
}

/// Sum of all entries of `A^{-1}` by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse_sum(a: Vec<Vec<f64>>) -> f64 {
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
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col {
                let f = row[col];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
    }
    m.iter().map(|row| row[n..].iter().sum::<f64>()).sum()
}

fn real_grid(n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from(lo + (hi - lo) * k as f64 / (n - 1) as f64)).collect()
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name, passed, detail }
}

fn determinant(rng: &mut StdRng) -> CheckOutcome {
    let grid = real_grid(200, -10.0, 10.0);
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        // |a|^2 stays below cosh(3)^2, so an absolute tolerance sits above round-off.
        let d = random_discrete_bounded(rng, 3.0);
        let s = random_step(rng, 2.0);
        for &z in &grid {
            let a = forward_discrete(&d, z);
            let b = forward_continuous(&s, z);
            worst = worst.max((a.a().norm_sqr() - a.b().norm_sqr() - 1.0).abs());
            worst = worst.max((b.a().norm_sqr() - b.b().norm_sqr() - 1.0).abs());
        }
    }
    outcome("determinant |a|^2 - |b|^2 = 1", worst <= 1e-11, format!("max deviation {worst:.3e}"))
}

fn translation(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        let p = random_discrete(rng);
        let k = rng.gen_range(1..=5);
        let q = p.shifted(k).unwrap();
        let z = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.0..1.0));
        let (a, b) = (forward_discrete(&p, z), forward_discrete(&q, z));
        let phase = (2.0 * I * z * (k as f64 * p.spacing())).exp();
        worst = worst.max((b.a() - a.a()).norm() / a.a().norm());
        worst = worst.max((b.b() - phase * a.b()).norm() / a.a().norm());
    }
    outcome("translation b -> e^{2iz k D} b", worst <= 1e-12, format!("max relative deviation {worst:.3e}"))
}

fn scaling(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        let p = random_step(rng, 1.5);
        let a = rng.gen_range(0.5..2.0);
        let q = p.time_scaled(a).unwrap();
        let z = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(0.0..1.0));
        let lhs = schur_ratio(&forward_continuous(&q, z)).unwrap().value;
        let rhs = schur_ratio(&forward_continuous(&p, z / a)).unwrap().value;
        worst = worst.max((lhs - rhs).norm());
    }
    outcome("time scaling a f(a t) -> f^(z/a)", worst <= 1e-9, format!("max deviation {worst:.3e}"))
}

/// Deviation of `b/a` of `eps g` from `-eps g^` on a real grid.
pub fn linearization_error(g: &DiscretePotential, eps: f64, grid: &[Complex64]) -> f64 {
    let p = g.scaled(eps);
    grid.iter()
        .map(|&z| (schur_ratio(&forward_discrete(&p, z)).unwrap().value + eps * fourier_linear(g, z)).norm())
        .fold(0.0, f64::max)
}

fn linearization(rng: &mut StdRng) -> CheckOutcome {
    let grid = real_grid(101, -5.0, 5.0);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..INSTANCES {
        let g = random_discrete(rng);
        let r = linearization_error(&g, 1e-2, &grid) / linearization_error(&g, 1e-3, &grid);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let passed = lo >= 800.0 && hi <= 1250.0;
    outcome(
        "linearization b/a = -eps g^ + O(eps^3)",
        passed,
        format!("error ratio per decade of eps in [{lo:.1}, {hi:.1}], expected ~1000"),
    )
}

fn riemann_lebesgue(rng: &mut StdRng) -> CheckOutcome {
    let grid = real_grid(200, -10.0, 10.0);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..INSTANCES {
        let p = random_discrete(rng);
        let bound = p.total_variation().tanh();
        for &z in &grid {
            let s = schur_ratio(&forward_discrete(&p, z)).unwrap().value.norm();
            worst = worst.max(s - bound);
        }
    }
    outcome("Riemann-Lebesgue |b/a| <= tanh(sum |c|)", worst <= 1e-12, format!("max excess {worst:.3e}"))
}

/// `int_R -log(1 - |f^(x)|^2) dx` over `|x| <= x_max` plus the averaged tail
/// `sum J_j^2/(2 x_max)` from the jumps `J_j` of the potential.
pub fn parseval_integral(p: &StepPotential, x_max: f64) -> Result<f64> {
    let f = |x: f64| {
        let s = schur_ratio(&forward_continuous(p, Complex64::from(x))).unwrap().value;
        -(1.0 - s.norm_sqr()).ln()
    };
    let breaks: Vec<f64> = (0..=(2.0 * x_max) as usize).map(|k| -x_max + k as f64).collect();
    let core = Quad::new(1e-9).integrate_with_breaks(f, &breaks)?;
    let mut prev = 0.0;
    let mut jumps = 0.0;
    for &v in p.values().iter().chain(std::iter::once(&0.0)) {
        jumps += (v - prev) * (v - prev);
        prev = v;
    }
    Ok(core + jumps / (2.0 * x_max))
}

fn parseval(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_step(rng, 0.5);
        let lhs = parseval_integral(&p, 200.0).unwrap();
        let rhs = PI * p.l2_norm_sq();
        worst = worst.max((lhs / rhs - 1.0).abs());
    }
    outcome("Parseval int -log(1-|f^|^2) = pi ||f||^2", worst <= 1e-3, format!("max relative deviation {worst:.3e}"))
}

fn toeplitz_brute_force(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        let mom = random_even_measure(rng).trig_moments(8).unwrap();
        let n = rng.gen_range(1..=8);
        let sums = inverse_sums(&mom, n).unwrap();
        for (k, s) in sums.iter().enumerate() {
            let oracle = gauss_jordan_inverse_sum(ToeplitzSystem { moments: &mom, n: k }.dense());
            worst = worst.max((s - oracle).abs());
        }
    }
    outcome("Toeplitz sums vs Gauss-Jordan (N <= 8)", worst <= 1e-12, format!("max deviation {worst:.3e}"))
}

fn mixed_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / x.abs().max(1.0)).fold(0.0, f64::max)
}

fn route_equality(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for _ in 0..INSTANCES {
        let mom = random_even_measure(rng).trig_moments(64).unwrap();
        let lev = toeplitz_h11_with(&mom, 64, ToeplitzSolver::Levinson).unwrap();
        let cho = toeplitz_h11_with(&mom, 64, ToeplitzSolver::Cholesky).unwrap();
        let opuc = opuc_h11(&mom, 64).unwrap();
        worst = worst.max(mixed_diff(lev.steps(), cho.steps())).max(mixed_diff(lev.steps(), opuc.steps()));
        monotone &= lev.steps().iter().all(|h| *h > 0.0);
    }
    outcome(
        "Toeplitz (Levinson, Cholesky) = OPUC, N = 64",
        worst <= 1e-10 && monotone,
        format!("max deviation {worst:.3e}; sums strictly increasing: {monotone}"),
    )
}

fn scaling_covariance(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        let mom = random_even_measure(rng).trig_moments(16).unwrap();
        let s = rng.gen_range(0.1..10.0);
        let scaled = TrigMoments::new(mom.half_period(), mom.coeffs().iter().map(|a| s * a).collect()).unwrap();
        let h = toeplitz_h11_with(&mom, 16, ToeplitzSolver::Levinson).unwrap();
        let hs = toeplitz_h11_with(&scaled, 16, ToeplitzSolver::Levinson).unwrap();
        for (a, b) in h.steps().iter().zip(hs.steps()) {
            worst = worst.max((b * s / a - 1.0).abs());
        }
    }
    outcome("h(s mu) = h(mu)/s", worst <= 1e-12, format!("max relative deviation {worst:.3e}"))
}

fn moments_linear(rng: &mut StdRng) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..INSTANCES {
        let a = random_even_measure(rng);
        let b = Measure::new(
            Density::Constant(rng.gen_range(0.0..1.0)),
            vec![Atom { x: 0.0, mass: rng.gen_range(0.1..1.0) }],
            a.period(),
        )
        .unwrap();
        let sum = a.add(&b).unwrap();
        let (ma, mb, ms) = (a.trig_moments(10).unwrap(), b.trig_moments(10).unwrap(), sum.trig_moments(10).unwrap());
        for k in 0..=10 {
            worst = worst.max((ms.coeffs()[k] - ma.coeffs()[k] - mb.coeffs()[k]).abs());
        }
    }
    outcome("moments are linear", worst <= 1e-12, format!("max deviation {worst:.3e}"))
}

fn corpus() -> Vec<Measure> {
    let s = (2.0 * PI).sqrt();
    let tab = Table::new(vec![-3.0, -1.0, 0.0, 1.0, 3.0], vec![0.2, 1.0, 0.5, 1.0, 0.2]).unwrap();
    vec![
        Measure::lebesgue(1.0),
        Measure::lebesgue_plus_atom(1.0 / s, 0.0, s).unwrap(),
        Measure::lebesgue_plus_atom(1.0 / s, 0.0, s).unwrap().periodize(2.0).unwrap(),
        Measure::new(Density::Table(tab.clone()), vec![Atom { x: 2.0, mass: 0.7 }], None).unwrap(),
        Measure::new(Density::Table(tab), vec![Atom { x: -4.0, mass: 1.0 }], Some(8.0)).unwrap(),
        Measure::new(Density::None, vec![Atom { x: -1.0, mass: 2.0 }, Atom { x: 1.0, mass: 2.0 }], Some(5.0)).unwrap(),
    ]
}

fn herglotz(rng: &mut StdRng) -> CheckOutcome {
    let (mut min_p, mut worst_dec, mut worst_schur) = (f64::INFINITY, 0.0f64, 0.0f64);
    for mu in corpus() {
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(0.1..10.0));
            let s = schwarz_transform(&mu, z, 1e-12).unwrap().value;
            let p = poisson_integral(&mu, z, 1e-12).unwrap();
            let q = conjugate_poisson_integral(&mu, z, 1e-12).unwrap();
            min_p = min_p.min(p);
            worst_dec = worst_dec.max((s - Complex64::new(p, q)).norm());
            worst_schur = worst_schur.max(schur_from_measure(&mu, z, 1e-12).unwrap().value.norm());
        }
    }
    outcome(
        "Herglotz: P > 0, S = P + iQ, |f^| <= 1",
        min_p > 0.0 && worst_dec <= 1e-9 && worst_schur <= 1.0 + 1e-12,
        format!("min P {min_p:.3e}; max |S - (P + iQ)| {worst_dec:.3e}; max |f^| {worst_schur:.6}"),
    )
}

fn lattice_sum() -> CheckOutcome {
    let (p, x, mass) = (3.0, 0.7, 1.3);
    let mu = Measure::new(Density::None, vec![Atom { x, mass }], Some(p)).unwrap();
    let mut worst: f64 = 0.0;
    for z in [Complex64::new(0.2, 0.5), Complex64::new(-1.0, 2.0), Complex64::new(4.0, 0.1)] {
        let closed = schwarz_transform(&mu, z, 1e-12).unwrap().value;
        let mmax: i64 = 1_000_000;
        let mut acc = Complex64::new(0.0, 0.0);
        for m in (1..=mmax).rev() {
            for xm in [x + m as f64 * p, x - m as f64 * p] {
                acc += 1.0 / (xm - z) - xm / (1.0 + xm * xm);
            }
        }
        acc += 1.0 / (x - z) - x / (1.0 + x * x);
        // Each symmetric pair behaves like 2 z/(m P)^2 for large m.
        acc += 2.0 * z / (p * p * mmax as f64);
        worst = worst.max((closed - mass * acc / (PI * I)).norm());
    }
    outcome("periodic lattice sum vs direct sum |m| <= 1e6", worst <= 1e-8, format!("max deviation {worst:.3e}"))
}

fn roundtrip() -> CheckOutcome {
    let s = (2.0 * PI).sqrt();
    let mu = Measure::lebesgue_plus_atom(1.0 / s, 0.0, s).unwrap();
    match roundtrip_residual(&mu, PI, 200, &default_zgrid(), 1e-12, InverseMethod::Toeplitz) {
        Ok(rt) => outcome("round trip inverse -> forward (T = pi, N = 200)", rt.residual <= 1e-6, format!("residual {:.3e}", rt.residual)),
        Err(e) => outcome("round trip inverse -> forward (T = pi, N = 200)", false, e.to_string()),
    }
}

fn clark() -> CheckOutcome {
    let pot = StepPotential::new(vec![0.0, 1.0], vec![0.3]).unwrap();
    match validate_clark_identity(&pot, 1.0, I, 50.0, true) {
        Ok(rep) => {
            let c = rep.c_identity.as_ref().map_or(f64::NAN, |c| c.residual);
            outcome(
                "Clark measures: B/A = -i S, D/C = -i S",
                rep.a_identity.residual <= 0.05 && c <= 0.05,
                format!("residuals {:.3e}, {:.3e} ({} zeros)", rep.a_identity.residual, c, rep.a_identity.zeros),
            )
        }
        Err(e) => outcome("Clark measures: B/A = -i S, D/C = -i S", false, e.to_string()),
    }
}

/// Runs every check with a seeded generator.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    let mut rng = StdRng::seed_from_u64(seed);
    vec![
        determinant(&mut rng),
        translation(&mut rng),
        scaling(&mut rng),
        linearization(&mut rng),
        riemann_lebesgue(&mut rng),
        parseval(&mut rng),
        toeplitz_brute_force(&mut rng),
        route_equality(&mut rng),
        scaling_covariance(&mut rng),
        moments_linear(&mut rng),
        herglotz(&mut rng),
        lattice_sum(),
        roundtrip(),
        clark(),
    ]
}
