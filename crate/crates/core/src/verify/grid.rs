//! Sample grids in the wave variable.

use crate::catalog::PoleSet;
use crate::error::{Error, Result};

/// Sample points plus the zones that were cut out around poles.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub start: f64,
    pub end: f64,
    pub points: Vec<f64>,
    pub excluded: Vec<[f64; 2]>,
}

fn check_range(a: f64, b: f64, n: usize) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::InvalidGrid(format!("range [{a}, {b}] is empty or not finite")));
    }
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
    }
    Ok(())
}

/// `n` equally spaced points on `[a, b]` including both ends.
pub fn uniform(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    check_range(a, b, n)?;
    let h = (b - a) / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { b } else { a + i as f64 * h }).collect())
}

/// Merged zones `[p - halfwidth, p + halfwidth]` for poles near `[a, b]`.
pub fn exclusion_zones(a: f64, b: f64, poles: &PoleSet, halfwidth: f64) -> Result<Vec<[f64; 2]>> {
    let mut zones: Vec<[f64; 2]> = Vec::new();
    for p in poles.within(a - halfwidth, b + halfwidth)? {
        let z = [(p - halfwidth).max(a), (p + halfwidth).min(b)];
        match zones.last_mut() {
            Some(last) if z[0] <= last[1] => last[1] = last[1].max(z[1]),
            _ => zones.push(z),
        }
    }
    Ok(zones)
}

/// `n` points spread evenly over `[a, b]` with pole zones removed.
///
/// Point `i` sits at allowed-measure fraction `(i + 1/2)/n`, so the layout is
/// a pure function of the inputs.
pub fn pole_avoiding(a: f64, b: f64, n: usize, poles: &PoleSet, halfwidth: f64) -> Result<Grid1D> {
    check_range(a, b, n)?;
    let excluded = exclusion_zones(a, b, poles, halfwidth)?;
    let mut segments = Vec::with_capacity(excluded.len() + 1);
    let mut cursor = a;
    for z in &excluded {
        if z[0] > cursor {
            segments.push([cursor, z[0]]);
        }
        cursor = cursor.max(z[1]);
    }
    if cursor < b {
        segments.push([cursor, b]);
    }
    let total: f64 = segments.iter().map(|s| s[1] - s[0]).sum();
    if total <= 0.0 || segments.is_empty() {
        return Err(Error::InvalidGrid(format!(
            "every point of [{a}, {b}] lies inside a pole exclusion zone"
        )));
    }
    let mut points = Vec::with_capacity(n);
    let mut seg = 0;
    let mut consumed = 0.0;
    for i in 0..n {
        let target = (i as f64 + 0.5) / n as f64 * total;
        while seg + 1 < segments.len() && target > consumed + (segments[seg][1] - segments[seg][0]) {
            consumed += segments[seg][1] - segments[seg][0];
            seg += 1;
        }
        let s = segments[seg];
        points.push((s[0] + (target - consumed)).min(s[1]));
    }
    Ok(Grid1D {
        start: a,
        end: b,
        points,
        excluded,
    })
}
