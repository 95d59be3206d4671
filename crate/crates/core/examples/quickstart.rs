//! Instantiate a table solution, certify it against its equation and print
//! the report.

use ellipsolve::expr::{Env, Symbol};
use ellipsolve::pde::{find_entry, InstantiateOptions, PdeId};
use ellipsolve::verify::{verify_pde, PdeSpec};

fn main() -> ellipsolve::Result<()> {
    let entry = find_entry(PdeId::Mbbm, "u5")?;
    let sol = entry.instantiate(&Env::new().with(Symbol::Omega, 2.0), InstantiateOptions::default())?;
    println!("{} = {}", sol.subject(), sol.entry.profile);
    let report = verify_pde(&sol, &PdeSpec::default())?;
    println!("{}", report.to_json());
    Ok(())
}
