//! Simplicity-first classifier benchmarking.
//!
//! * [`dataset`]: CSV loading with `?` for missing cells, stratified fold
//!   plans, holdout splits.
//! * [`learners`]: zero-level (majority), one-level (1R) and exact
//!   minimum-training-error two-level decision trees.
//! * [`evaluation`]: repeated cross-validation and the accuracy ladder
//!   report with Δ(1−0) and Δ(2−1) columns.
//! * [`costcurves`]: normalized expected cost against PC(+), crossovers,
//!   lower envelopes, bootstrap bands and dominance regions.
//! * [`svg`]: static plots of cost curves.
//! * [`app`]: the `bench` and `costcurve` runs used by the `simplicity`
//!   binary.

pub mod app;
pub mod costcurves;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod learners;
pub mod rng;
pub mod svg;

pub use error::{Error, Result};
