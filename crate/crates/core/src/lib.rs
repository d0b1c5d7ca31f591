//! Geometric conditioning of Dempster–Shafer belief functions.
//!
//! Belief functions on a finite frame are stored densely, indexed by subset
//! bitmask. On top of that representation the crate provides:
//!
//! - [`mass`]: mass, belief and plausibility vectors plus the zeta/Möbius
//!   transforms linking them;
//! - [`combination`]: Dempster's rule, the conjunctive and disjunctive rules,
//!   and combinations induced by a conditioning rule;
//! - [`classical`]: Dempster, credal, Suppes–Zanotti, conjunctive and
//!   disjunctive conditioning;
//! - [`lp`]: conditioning by minimising L1, L2 and L∞ distances in the mass
//!   space, and two closed forms computed in the belief space;
//! - [`oracle`]: independent numerical checks (distance evaluation, a linear
//!   solve for the L2 projection, sampling and grid searches);
//! - [`io`], [`plot`] and [`cli`]: the document format, ternary plot scenes and
//!   the command implementations behind the `geocond` binary.
//!
//! ```
//! use geocond::{Frame, MassFunction, MassVector, lp};
//!
//! let frame = Frame::new(["x", "y", "z"]).unwrap();
//! let m = MassFunction::from_focal(
//!     &frame,
//!     [(frame.subset(["x"])?, 0.2), (frame.subset(["y"])?, 0.3), (frame.subset(["x", "z"])?, 0.5)],
//! )?;
//! let a = frame.subset(["x", "y"])?;
//! let l2 = lp::l2_condition(&m, a)?;
//! assert!((l2.mass(frame.subset(["x"])?) - 11.0 / 30.0).abs() < 1e-12);
//! # Ok::<(), geocond::Error>(())
//! ```

pub mod classical;
pub mod cli;
pub mod combination;
mod error;
mod frame;
pub mod io;
pub mod lp;
pub mod mass;
pub mod oracle;
pub mod plot;

pub use error::{Error, Result};
pub use frame::{Frame, Subset, DEFAULT_FRAME_CAP};
pub use mass::{
    BeliefVector, Diagnostics, MassFunction, MassVector, PlausibilityVector, SignedMassFunction,
    UnnormalizedMass,
};

/// Tolerance for normalization and equality of analytic results.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Entries above `-NEGATIVITY_TOL` count as nonnegative.
pub const NEGATIVITY_TOL: f64 = 1e-12;

/// Tolerance for iterative or sampled numerics.
pub const NUMERIC_TOL: f64 = 1e-6;

/// Denominators at or below this value are treated as zero.
pub const ZERO_TOL: f64 = 1e-12;
