//! Seeded random draws of admissible parameters.

use rand::Rng;

use super::{Constraint, ModulusRule, SolutionFamily};
use crate::error::{Error, Result};
use crate::expr::{Env, Symbol};

const MAX_ATTEMPTS: usize = 20_000;
/// Largest coefficient magnitude a draw may produce.
const MAX_COEFFICIENT: f64 = 100.0;

fn draw_coefficient<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let mag = rng.gen_range(0.25..=2.0);
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// One admissible binding of `c0..c4`, `m` and `ε = +1` for `family`.
///
/// Coefficients not fixed by a relation are drawn with magnitude in
/// `[0.25, 2]` and random sign, `m` uniformly in `[0.1, 0.9]`. Draws whose
/// derived coefficients exceed 100 in magnitude or whose rate leaves
/// `[0.05, 20]` are rejected.
pub fn draw_admissible<R: Rng + ?Sized>(family: &SolutionFamily, rng: &mut R) -> Result<Env> {
    for _ in 0..MAX_ATTEMPTS {
        let mut env = Env::new();
        for s in Symbol::COEFFICIENTS {
            if !family.assigns(s) {
                env.set(s, draw_coefficient(rng));
            }
        }
        match family.modulus {
            ModulusRule::Free => env.set(Symbol::M, rng.gen_range(0.1..=0.9)),
            ModulusRule::Fixed(m) => env.set(Symbol::M, m),
            ModulusRule::None => {}
        }
        if family.epsilon {
            env.set(Symbol::Eps, 1.0);
        }
        // Two passes so relations may use coefficients set by earlier ones.
        for _ in 0..2 {
            for cond in &family.conditions {
                if let Constraint::Assign { symbol, value } = &cond.constraint {
                    env.set(*symbol, value.eval(&env));
                }
            }
        }
        let coefficients_ok = Symbol::COEFFICIENTS.iter().all(|s| {
            let v = env.get(*s);
            v.is_finite() && v.abs() <= MAX_COEFFICIENT
        });
        if !coefficients_ok {
            continue;
        }
        if let Some(rate) = &family.rate {
            let r = rate.eval(&env).abs();
            if !(0.05..=20.0).contains(&r) {
                continue;
            }
        }
        if family.admits(&env) {
            return Ok(env);
        }
    }
    Err(Error::Domain(format!(
        "no admissible parameters for {} after {MAX_ATTEMPTS} draws",
        family.id
    )))
}
