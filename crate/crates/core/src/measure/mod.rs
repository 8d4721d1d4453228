//! Positive measures on the real line: piecewise-linear or constant density
//! plus atoms, optionally periodic with base window `[-T, T)`.

mod moments;
mod pw;
mod spec;

pub use moments::TrigMoments;
pub use pw::{PwReport, PwVerdict};

use crate::{Error, Result};

/// Absolute tolerance for evenness checks on atoms and density samples.
pub const EVEN_TOL: f64 = 1e-9;

/// Piecewise-linear density sampled at strictly increasing `xs`; zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Table {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::spec("ac.ys", "length differs from ac.xs"));
        }
        if xs.len() < 2 {
            return Err(Error::spec("ac.xs", "a table needs at least two samples"));
        }
        for (k, &x) in xs.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::spec(format!("ac.xs[{k}]"), "not finite"));
            }
            if k > 0 && x <= xs[k - 1] {
                return Err(Error::spec(format!("ac.xs[{k}]"), "abscissae must be strictly increasing"));
            }
        }
        for (k, &y) in ys.iter().enumerate() {
            if !y.is_finite() {
                return Err(Error::spec(format!("ac.ys[{k}]"), "not finite"));
            }
            if y < 0.0 {
                return Err(Error::spec(format!("ac.ys[{k}]"), "negative density"));
            }
        }
        Ok(Table { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn lo(&self) -> f64 {
        self.xs[0]
    }

    pub fn hi(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < self.lo() || x > self.hi() {
            return 0.0;
        }
        let k = self.xs.partition_point(|&t| t <= x).clamp(1, self.xs.len() - 1);
        let (x0, x1, y0, y1) = (self.xs[k - 1], self.xs[k], self.ys[k - 1], self.ys[k]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Segments `(x0, x1, y0, y1)`.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        (1..self.xs.len()).map(move |k| (self.xs[k - 1], self.xs[k], self.ys[k - 1], self.ys[k]))
    }

    /// Restriction to `[a, b]`, or `None` if nothing of positive length remains.
    pub fn clip(&self, a: f64, b: f64) -> Option<Table> {
        let lo = self.lo().max(a);
        let hi = self.hi().min(b);
        if hi <= lo {
            return None;
        }
        let mut xs = vec![lo];
        xs.extend(self.xs.iter().copied().filter(|&x| x > lo && x < hi));
        xs.push(hi);
        let ys = xs.iter().map(|&x| self.eval(x)).collect();
        Some(Table { xs, ys })
    }

    /// Exact integral over `[a, b]`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        self.segments()
            .map(|(x0, x1, y0, y1)| {
                let l = x0.max(a);
                let r = x1.min(b);
                if r <= l {
                    return 0.0;
                }
                let s = (y1 - y0) / (x1 - x0);
                let yl = y0 + s * (l - x0);
                let yr = y0 + s * (r - x0);
                0.5 * (yl + yr) * (r - l)
            })
            .sum()
    }

    /// Support (closure of `{density > 0}`) as a list of closed intervals.
    pub fn support(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (x0, x1, y0, y1) in self.segments() {
            if y0 == 0.0 && y1 == 0.0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.1 == x0 => last.1 = x1,
                _ => out.push((x0, x1)),
            }
        }
        out
    }
}

/// Absolutely continuous part.
#[derive(Debug, Clone, PartialEq)]
pub enum Density {
    None,
    Constant(f64),
    Table(Table),
}

impl Density {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Density::None => 0.0,
            Density::Constant(c) => *c,
            Density::Table(t) => t.eval(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Density::None => true,
            Density::Constant(c) => *c == 0.0,
            Density::Table(t) => t.ys.iter().all(|&y| y == 0.0),
        }
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        match self {
            Density::None => 0.0,
            Density::Constant(c) => c * (b - a),
            Density::Table(t) => t.integral(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub x: f64,
    pub mass: f64,
}

/// Positive measure: density plus atoms; when `period` is set the data
/// describe the base window `[-T, T)` with `period = 2T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    density: Density,
    atoms: Vec<Atom>,
    period: Option<f64>,
}

impl Measure {
    /// Validates, sorts and merges atoms. For periodic measures an atom at `T`
    /// is moved to its image `-T`; anything else outside the window is rejected.
    pub fn new(density: Density, atoms: Vec<Atom>, period: Option<f64>) -> Result<Self> {
        if let Some(p) = period {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::spec("period", "must be a positive number"));
            }
        }
        let half = period.map(|p| 0.5 * p);
        match &density {
            Density::Constant(c) if !(c.is_finite() && *c >= 0.0) => {
                return Err(Error::spec("ac.value", "negative density"));
            }
            Density::Table(t) => {
                if let Some(h) = half {
                    if t.lo() < -h || t.hi() > h {
                        let k = if t.lo() < -h { 0 } else { t.xs.len() - 1 };
                        return Err(Error::spec(format!("ac.xs[{k}]"), "outside the base window [-T, T]"));
                    }
                }
            }
            _ => {}
        }
        let mut clean = Vec::with_capacity(atoms.len());
        for (k, a) in atoms.into_iter().enumerate() {
            if !a.x.is_finite() {
                return Err(Error::spec(format!("atoms[{k}].x"), "not finite"));
            }
            if !a.mass.is_finite() || a.mass < 0.0 {
                return Err(Error::spec(format!("atoms[{k}].mass"), "negative mass"));
            }
            if a.mass == 0.0 {
                return Err(Error::spec(format!("atoms[{k}].mass"), "mass must be strictly positive"));
            }
            let mut x = a.x;
            if let Some(h) = half {
                if x == h {
                    x = -h;
                } else if x < -h || x > h {
                    return Err(Error::spec(format!("atoms[{k}].x"), "outside the base window [-T, T)"));
                }
            }
            clean.push(Atom { x, mass: a.mass });
        }
        clean.sort_by(|a, b| a.x.total_cmp(&b.x));
        let mut atoms: Vec<Atom> = Vec::with_capacity(clean.len());
        for a in clean {
            match atoms.last_mut() {
                Some(last) if last.x == a.x => last.mass += a.mass,
                _ => atoms.push(a),
            }
        }
        Ok(Measure { density, atoms, period })
    }

    pub fn zero() -> Self {
        Measure { density: Density::None, atoms: Vec::new(), period: None }
    }

    /// Constant density `rho` on the whole line.
    pub fn lebesgue(rho: f64) -> Self {
        Measure::new(Density::Constant(rho), Vec::new(), None).expect("valid density")
    }

    /// `rho * m + mass * delta_x`.
    pub fn lebesgue_plus_atom(rho: f64, x: f64, mass: f64) -> Result<Self> {
        Measure::new(Density::Constant(rho), vec![Atom { x, mass }], None)
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn half_period(&self) -> Option<f64> {
        self.period.map(|p| 0.5 * p)
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.density.is_zero()
    }

    /// Sum of two measures with the same periodicity.
    pub fn add(&self, other: &Measure) -> Result<Measure> {
        if self.period != other.period {
            return Err(Error::InvalidArgument("cannot add measures with different periods".into()));
        }
        let density = match (&self.density, &other.density) {
            (Density::None, d) | (d, Density::None) => d.clone(),
            (Density::Constant(a), Density::Constant(b)) => Density::Constant(a + b),
            (Density::Table(a), Density::Table(b)) if a.xs == b.xs => {
                let ys = a.ys.iter().zip(&b.ys).map(|(u, v)| u + v).collect();
                Density::Table(Table::new(a.xs.clone(), ys)?)
            }
            _ => {
                return Err(Error::InvalidArgument(
                    "sum of these densities is not representable as a single table".into(),
                ))
            }
        };
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Measure::new(density, atoms, self.period)
    }

    /// The `2T`-periodic measure agreeing with `self` on `[-T, T)`.
    pub fn periodize(&self, t: f64) -> Result<Measure> {
        if self.is_periodic() {
            return Err(Error::InvalidArgument("periodize expects a non-periodic measure".into()));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!("half period T = {t} must be positive")));
        }
        let density = match &self.density {
            Density::Table(tab) => match tab.clip(-t, t) {
                Some(c) => Density::Table(c),
                None => Density::None,
            },
            d => d.clone(),
        };
        let atoms = self.atoms.iter().copied().filter(|a| a.x >= -t && a.x < t).collect();
        Ok(Measure { density, atoms, period: Some(2.0 * t) })
    }

    /// `mu([a, b))`.
    pub fn mass_in(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        match self.period {
            None => self.window_mass(a, b),
            Some(p) => {
                let h = 0.5 * p;
                let k0 = ((a + h) / p).floor() as i64;
                let k1 = ((b + h) / p).floor() as i64;
                let mut total = 0.0;
                for k in k0..=k1 {
                    let shift = k as f64 * p;
                    let l = (a - shift).max(-h);
                    let r = (b - shift).min(h);
                    if r > l {
                        total += self.window_mass(l, r);
                    }
                }
                total
            }
        }
    }

    fn window_mass(&self, a: f64, b: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().filter(|at| at.x >= a && at.x < b).map(|at| at.mass).sum();
        atoms + self.density.integral(a, b)
    }

    /// `mu([-T, T))` of a periodic measure.
    pub fn window_total(&self) -> Option<f64> {
        self.half_period().map(|h| self.window_mass(-h, h))
    }

    /// Density at `x`, following the periodic extension when periodic.
    pub fn density_at(&self, x: f64) -> f64 {
        match self.period {
            None => self.density.eval(x),
            Some(p) => self.density.eval(reduce(x, p)),
        }
    }

    /// Checks evenness of the periodic extension (tolerance [`EVEN_TOL`]).
    pub fn check_even(&self) -> Result<()> {
        let h = self
            .half_period()
            .ok_or_else(|| Error::InvalidArgument("evenness is checked on periodic measures".into()))?;
        for a in &self.atoms {
            if a.x == -h || a.x.abs() <= EVEN_TOL {
                continue;
            }
            let mirror = self.atoms.iter().find(|b| (b.x + a.x).abs() <= EVEN_TOL);
            match mirror {
                Some(b) if (b.mass - a.mass).abs() <= EVEN_TOL => {}
                Some(b) => {
                    return Err(Error::NotEven(format!(
                        "atom at {} has mass {} but its mirror has mass {}",
                        a.x, a.mass, b.mass
                    )))
                }
                None => return Err(Error::NotEven(format!("atom at {} has no mirror image", a.x))),
            }
        }
        if let Density::Table(t) = &self.density {
            for &x in t.xs.iter() {
                let d = (t.eval(x) - t.eval(-x)).abs();
                if d > EVEN_TOL {
                    return Err(Error::NotEven(format!("density at {x} differs from density at {} by {d:e}", -x)));
                }
            }
        }
        Ok(())
    }
}

/// Reduce `x` into `[-P/2, P/2)`.
pub(crate) fn reduce(x: f64, p: f64) -> f64 {
    let h = 0.5 * p;
    let r = x - p * ((x + h) / p).floor();
    if r >= h {
        r - p
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2pi_atom() -> Measure {
        let s = (2.0 * std::f64::consts::PI).sqrt();
        Measure::lebesgue_plus_atom(1.0 / s, 0.0, s).unwrap()
    }

    #[test]
    fn atoms_merge_and_sort() {
        let m = Measure::new(
            Density::None,
            vec![Atom { x: 1.0, mass: 1.0 }, Atom { x: -1.0, mass: 2.0 }, Atom { x: 1.0, mass: 0.5 }],
            None,
        )
        .unwrap();
        assert_eq!(m.atoms(), &[Atom { x: -1.0, mass: 2.0 }, Atom { x: 1.0, mass: 1.5 }]);
    }

    #[test]
    fn negative_mass_reports_field() {
        let e = Measure::new(Density::None, vec![Atom { x: 0.0, mass: -1.0 }], None).unwrap_err();
        assert_eq!(e.to_string(), "atoms[0].mass: negative mass");
    }

    #[test]
    fn periodic_edge_atoms() {
        let m = Measure::new(Density::None, vec![Atom { x: 1.0, mass: 1.0 }], Some(2.0)).unwrap();
        assert_eq!(m.atoms()[0].x, -1.0);
        assert!(Measure::new(Density::None, vec![Atom { x: 1.5, mass: 1.0 }], Some(2.0)).is_err());
    }

    #[test]
    fn periodize_discards_outside_atoms() {
        let m = Measure::new(Density::None, vec![Atom { x: 1.5, mass: 1.0 }], None).unwrap();
        let p = m.periodize(1.0).unwrap();
        assert_eq!(p.period(), Some(2.0));
        assert!(p.is_zero());
        // -T belongs to the window, T does not.
        let m = Measure::new(Density::None, vec![Atom { x: -1.0, mass: 1.0 }, Atom { x: 1.0, mass: 3.0 }], None).unwrap();
        assert_eq!(m.periodize(1.0).unwrap().atoms(), &[Atom { x: -1.0, mass: 1.0 }]);
    }

    #[test]
    fn periodized_example_three() {
        let p = sqrt2pi_atom().periodize(3.0).unwrap();
        assert_eq!(p.atoms().len(), 1);
        assert!(matches!(p.density(), Density::Constant(_)));
        let s = (2.0 * std::f64::consts::PI).sqrt();
        // One atom per period plus the density.
        let mass = p.mass_in(-3.0, 9.0);
        assert!((mass - (2.0 * s + 12.0 / s)).abs() < 1e-12);
    }

    #[test]
    fn table_clip_and_integral() {
        let t = Table::new(vec![-2.0, 0.0, 2.0], vec![0.0, 2.0, 0.0]).unwrap();
        assert!((t.integral(-5.0, 5.0) - 4.0).abs() < 1e-15);
        let c = t.clip(-1.0, 1.0).unwrap();
        assert_eq!(c.xs(), &[-1.0, 0.0, 1.0]);
        assert_eq!(c.ys(), &[1.0, 2.0, 1.0]);
        assert!((t.integral(-1.0, 1.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn evenness() {
        let m = Measure::new(
            Density::Table(Table::new(vec![-1.0, 0.0, 1.0], vec![1.0, 2.0, 1.0]).unwrap()),
            vec![Atom { x: -0.5, mass: 1.0 }, Atom { x: 0.5, mass: 1.0 }, Atom { x: -2.0, mass: 4.0 }],
            Some(4.0),
        )
        .unwrap();
        m.check_even().unwrap();
        let m = Measure::new(Density::None, vec![Atom { x: 0.5, mass: 1.0 }], Some(4.0)).unwrap();
        assert!(matches!(m.check_even(), Err(Error::NotEven(_))));
    }

    #[test]
    fn reduce_into_window() {
        assert_eq!(reduce(3.0, 4.0), -1.0);
        assert_eq!(reduce(2.0, 4.0), -2.0);
        assert_eq!(reduce(-2.0, 4.0), -2.0);
        assert!((reduce(-5.5, 4.0) - (-1.5)).abs() < 1e-15);
    }
}
