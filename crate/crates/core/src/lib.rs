//! Geometry, sharp constants, extremal functions, and numerical verification
//! machinery for fractional Sobolev-type inequalities on H-type groups.
//!
//! The crate is organized bottom-up:
//!
//! - [`clifford`]: the anticommuting matrix systems defining a group,
//! - [`group`]: group law, gauge norm, dilations, differential operators,
//! - [`constants`]: the closed-form sharp constants,
//! - [`extremals`]: the extremal profile, its conformal orbit, and the
//!   associated unit-sphere coordinate functions,
//! - [`integrate`]: quadrature on the group and the singular quadratic forms,
//! - [`functionals`]: the inequalities as computable quotients with deficits,
//! - [`sharpness`]: derivative-free minimization over trial families.

pub mod clifford;
pub mod constants;
pub mod error;
pub mod extremals;
pub mod functionals;
pub mod group;
pub mod integrate;
pub mod sharpness;

pub use error::{Error, Result};
