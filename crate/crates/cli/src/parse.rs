//! Value parsers for numeric command-line arguments.

use std::f64::consts::PI;

/// `lo:hi:count`, inclusive of both ends. A single number is a one-point grid.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(vec![number(x)?]),
        [lo, hi, count] => {
            let (lo, hi) = (number(lo)?, number(hi)?);
            let count: usize = count.trim().parse().map_err(|_| format!("bad point count `{count}`"))?;
            match count {
                0 => Err("grid needs at least one point".into()),
                1 if lo != hi => Err("a one-point grid needs lo = hi".into()),
                1 => Ok(vec![lo]),
                _ => Ok((0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect()),
            }
        }
        _ => Err(format!("expected lo:hi:count, got `{s}`")),
    }
}

/// A comma-separated list of grids, concatenated.
pub fn grid_list(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        out.extend(grid(part)?);
    }
    Ok(out)
}

/// A number, or a multiple of pi: `pi`, `2pi`, `2*pi`, `pi/2`, `0.5pi`.
pub fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let bad = || format!("not a number: `{s}`");
    let Some(at) = s.find("pi") else {
        return s.parse().map_err(|_| bad());
    };
    let coef = s[..at].trim_end_matches('*').trim();
    let coef = match coef {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = s[at + 2..].trim();
    let den = match rest.strip_prefix('/') {
        Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(coef * PI / den)
}

pub fn positive(s: &str) -> Result<f64, String> {
    let x = number(s)?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("must be positive, got {s}"))
    }
}

pub fn positive_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(positive).collect()
}

pub fn tolerance(s: &str) -> Result<f64, String> {
    let x = number(s)?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("tolerance must lie in (0, 1), got {s}"))
    }
}

pub fn count(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("must be a positive integer, got `{s}`")),
    }
}
