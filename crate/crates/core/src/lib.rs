//! Slot-driven system-level simulator for downlink beam hopping in an
//! NR-style LEO satellite constellation.
//!
//! The crate is organised bottom-up:
//! - [`orbits`]: Walker constellation, circular propagation, earth geometry;
//! - [`link`]: array pattern, path loss, channel gain, noise and SINR;
//! - [`layout`]: earth-fixed spotbeams and UE association;
//! - [`scheduler`]: distance-limited greedy, no-limit and round-robin hopping;
//! - [`traffic`]: full-buffer and FTP model 3 queues;
//! - [`engine`]: the slot loop and its metrics;
//! - [`config`], [`experiment`], [`output`]: experiment files, sweeps and results.
//!
//! With the default `parallel` feature, per-UE gain and SINR evaluation,
//! per-satellite scheduling and sweep runs are spread over rayon. Disable it
//! for a purely sequential build; results are identical either way.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod config;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod layout;
pub mod link;
pub mod orbits;
pub mod output;
pub mod parallel;
pub mod scenario;
pub mod scheduler;
pub mod traffic;

pub use error::{Error, Result};
