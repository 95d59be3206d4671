//! Real-argument elliptic special functions.
//!
//! All functions here are pure; the only cached state is the immutable
//! [`WeierstrassLattice`] built once per invariant pair.

mod jacobi;
mod weierstrass;

pub use jacobi::{
    complete_k, jacobi, jacobi_ratio, jacobi_ratio_with_radius, jacobi_unchecked, nearest_ratio_pole, ns_plus_cs,
    ns_plus_cs_unchecked, JacobiRatio, JacobiTriple, Modulus, DEFAULT_POLE_RADIUS,
};
pub use weierstrass::{weierstrass_p, weierstrass_p_with_derivative, WeierstrassInvariants, WeierstrassLattice};
