//! Minimum-energy routing on snapshots of mobile ad-hoc networks.
//!
//! A [`Network`] holds positioned devices, each supporting a prefix of the
//! power levels. [`maned`] finds the cheapest source to destination path when
//! changing level at a relay carries an extra cost, [`comanet`] expresses the
//! same snapshot as a constraint model and checks solutions against it, and
//! [`netgen`] generates and stores random networks.

pub mod comanet;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod maned;
pub mod netgen;
pub mod solution;

pub type DeviceId = u32;

pub use error::{Error, Result};
pub use geometry::{DistanceMode, Energy, Level, Point, PowerLevel, Space};
pub use maned::{brute_force_min_path, evaluate_path, maned_solve, EdgePolicy, Hop, Maned, PathResult};
pub use netgen::{generate, CostParams, Device, GenerateParams, Network};
