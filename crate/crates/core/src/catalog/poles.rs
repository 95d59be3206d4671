use serde::Serialize;

use crate::error::{Error, Result};

/// Evenly spaced poles `offset + j * period` for all integers `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleLattice {
    pub offset: f64,
    pub period: f64,
}

/// Real singularities of a profile in the wave variable.
///
/// Removable singularities of a printed form (points where the formula is
/// 0/0 or inf/inf) are listed too, since the form cannot be evaluated there.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PoleSet {
    pub points: Vec<f64>,
    pub lattices: Vec<PoleLattice>,
}

const MAX_ENUMERATED: usize = 1_000_000;

impl PoleSet {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn point(x: f64) -> Self {
        PoleSet {
            points: vec![x],
            lattices: vec![],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lattices.is_empty()
    }

    pub fn with_point(mut self, x: f64) -> Self {
        if x.is_finite() {
            self.points.push(x);
        }
        self
    }

    /// Poles of `g(rate * xi)` given that `g` has poles at `offset + j * period`
    /// in its own argument.
    pub fn with_argument_lattice(mut self, offset: f64, period: f64, rate: f64) -> Self {
        if rate.is_finite() && rate != 0.0 && period.is_finite() && period > 0.0 {
            let p = period / rate.abs();
            let o = offset / rate;
            self.lattices.push(PoleLattice {
                offset: o - p * (o / p).floor(),
                period: p,
            });
        }
        self
    }

    /// Nearest pole to `x` as `(location, distance)`.
    pub fn nearest(&self, x: f64) -> Option<(f64, f64)> {
        let lattice = self
            .lattices
            .iter()
            .map(|l| l.offset + l.period * ((x - l.offset) / l.period).round());
        self.points
            .iter()
            .copied()
            .chain(lattice)
            .map(|loc| (loc, (x - loc).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// All poles in `[a, b]`, sorted.
    pub fn within(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        let mut out: Vec<f64> = self.points.iter().copied().filter(|p| *p >= a && *p <= b).collect();
        for l in &self.lattices {
            let lo = ((a - l.offset) / l.period).ceil();
            let hi = ((b - l.offset) / l.period).floor();
            if hi - lo > MAX_ENUMERATED as f64 {
                return Err(Error::InvalidGrid(format!(
                    "pole lattice with period {} is too dense on [{a}, {b}]",
                    l.period
                )));
            }
            let mut j = lo;
            while j <= hi {
                out.push(l.offset + j * l.period);
                j += 1.0;
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        Ok(out)
    }

    /// Poles of `s -> F(s - shift)`.
    pub fn shifted(&self, shift: f64) -> PoleSet {
        PoleSet {
            points: self.points.iter().map(|p| p + shift).collect(),
            lattices: self
                .lattices
                .iter()
                .map(|l| PoleLattice {
                    offset: l.offset + shift,
                    period: l.period,
                })
                .collect(),
        }
    }

    pub fn union(mut self, other: PoleSet) -> PoleSet {
        self.points.extend(other.points);
        self.lattices.extend(other.lattices);
        self
    }
}
