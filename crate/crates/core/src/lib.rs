//! Superintegrable Hamiltonians on three-dimensional spaces of non-constant
//! curvature built from the deformed sl(2) coalgebra: generators and
//! Casimirs, metrics and curvature, trajectories, intrinsic potentials, and
//! randomized audits of the claimed identities.

// Tensor code indexes several arrays per loop, and `!(x > 0.0)` is the
// NaN-rejecting guard used throughout.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod coalgebra;
pub mod dynamics;
pub mod error;
pub mod fd;
pub mod geometry;
pub mod ktrig;
pub mod parallel;
pub mod potentials;
pub mod profile;
pub mod space;

pub use error::{Error, Result};
pub use parallel::ExecMode;
pub use profile::{ConformalProfile, GreenCase, Sign};
pub use space::{PhasePoint, PhasePointCartesian, PhasePointSpherical, SpaceSpec};
