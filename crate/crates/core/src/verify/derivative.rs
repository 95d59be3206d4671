//! Central differences with Richardson extrapolation.

use crate::catalog::PoleSet;
use crate::error::{Error, Result};

/// Largest offset from `x` touched by [`numeric_derivative`] with step `h`.
pub fn stencil_reach(h: f64) -> f64 {
    4.0 * h
}

fn central(f: &impl Fn(f64) -> f64, x: f64, order: u8, h: f64) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        _ => (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h),
    }
}

/// Derivative of order 1, 2 or 3 at `x`.
///
/// Orders 1 and 2 combine steps `h, 2h, 4h` (error `O(h^6)`); order 3 combines
/// `h, 2h` (error `O(h^4)`). Every order samples within `4h` of `x`.
pub fn numeric_derivative(f: impl Fn(f64) -> f64, x: f64, order: u8, h: f64) -> Result<f64> {
    if !(1..=3).contains(&order) {
        return Err(Error::Domain(format!(
            "derivative order must be 1, 2 or 3, got {order}"
        )));
    }
    if !(h > 0.0 && h.is_finite()) || !x.is_finite() {
        return Err(Error::Domain(format!("need finite x and h > 0, got x = {x}, h = {h}")));
    }
    let d = if order == 3 {
        let (d1, d2) = (central(&f, x, 3, h), central(&f, x, 3, 2.0 * h));
        (4.0 * d1 - d2) / 3.0
    } else {
        let d1 = central(&f, x, order, h);
        let d2 = central(&f, x, order, 2.0 * h);
        let d4 = central(&f, x, order, 4.0 * h);
        let r1 = (4.0 * d1 - d2) / 3.0;
        let r2 = (4.0 * d2 - d4) / 3.0;
        (16.0 * r1 - r2) / 15.0
    };
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Domain(format!(
            "non-finite function value on the stencil around {x}"
        )))
    }
}

/// As [`numeric_derivative`], refusing stencils that come within `radius` of a pole.
pub fn numeric_derivative_avoiding(
    f: impl Fn(f64) -> f64,
    x: f64,
    order: u8,
    h: f64,
    poles: &PoleSet,
    radius: f64,
) -> Result<f64> {
    let reach = stencil_reach(h);
    if let Some((location, dist)) = poles.nearest(x) {
        if dist <= radius + reach {
            return Err(Error::Pole {
                location,
                requested: x,
                radius: radius + reach,
            });
        }
    }
    numeric_derivative(f, x, order, h)
}
