//! Exact traveling-wave solutions of nonlinear evolution equations through
//! the general elliptic equation `F'^2 = c0 + c1 F + c2 F^2 + c3 F^3 + c4 F^4`,
//! with numerical certification of every solution.

pub mod catalog;
pub mod elliptic;
pub mod errata;
pub mod error;
pub mod exec;
pub mod expr;
pub mod matcher;
pub mod pde;
pub mod report;
pub mod solve;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
