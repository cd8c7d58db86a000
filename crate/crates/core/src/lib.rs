//! Elevation-only shade construction for tori.
//!
//! The crate has three legs:
//! - [`construction`]: the fifteen-step drafting construction that produces
//!   the labeled point set and the closed shade path from nothing but the
//!   outline dimensions, built on the [`planar`] kernel;
//! - [`oracle`]: an independent analytic ground truth — the 3D terminator of
//!   the torus under the conventional light, plus a rasterized visible-shade
//!   mask and its vectorized outline;
//! - [`compare`]: curve metrics (Hausdorff, mean distance, region IoU)
//!   quantifying how well the construction tracks the oracle, and a
//!   calibration harness ranking the interpretation variants.
//!
//! [`plates`] renders publication-style SVG plates and [`rubric`] scores
//! drafting methods on the 1-5 complexity scale.

pub mod compare;
pub mod construction;
pub mod oracle;
pub mod planar;
pub mod plates;
pub mod rubric;
pub mod spline;
pub mod textfmt;
