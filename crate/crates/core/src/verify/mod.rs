//! Numerical certification of profiles and spacetime solutions.

pub mod audit;
pub mod derivative;
pub mod grid;
pub mod ode;
pub mod pde;

pub use audit::{
    arbitrary_c0_audit, audit_params, audited_entries, default_c0_audit, C0AuditEntry, C0Sample, DEFAULT_C0_SAMPLES,
};
pub use derivative::{numeric_derivative, numeric_derivative_avoiding, stencil_reach};
pub use ode::{profile_report, verify_ode, Forms, Profile};
pub use pde::{
    manufactured_calibration, operator_residual, verify_field, verify_pde, verify_scaled, Calibration, PdeGrid,
    PdeSpec, Singularities,
};
