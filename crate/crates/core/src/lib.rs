//! Interference statistics for planar Poisson transmitter fields.
//!
//! The crate models the aggregate received power at a reference point when
//! transmitter locations form a (possibly non-stationary) Poisson point
//! process, fading is i.i.d. per transmitter and path loss is a bounded
//! monotone function of distance. It provides:
//!
//! * normal-CDF envelopes `Q±(x) = Ψ(x) ± c(x)/√λ` for the centered and
//!   normalized interference distribution, with the Berry–Esseen style
//!   coefficient `c(x)` computed from fading moments and path-loss integrals
//!   ([`gaussian_bounds`]),
//! * exact Monte-Carlo simulation of interference realizations and empirical
//!   CDF machinery to check the envelopes ([`montecarlo`]),
//! * outage-capacity and ergodic sum-capacity bounds for a link embedded in
//!   the interference field, plus simulated reference values ([`capacity`]).
//!
//! Models are plain immutable values; everything that consumes randomness
//! takes an explicit seed and is bit-reproducible.

pub mod capacity;
pub mod channel;
pub mod config;
pub mod error;
pub mod gaussian_bounds;
pub mod geometry;
pub mod montecarlo;
pub mod presets;
pub mod quad;
pub mod rng;
pub mod special;

pub use error::{Error, Result};
