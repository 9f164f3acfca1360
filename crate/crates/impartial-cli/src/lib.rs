//! Support library for the `impartial` binary: config-file parsing and the
//! fixed output formatting that keeps experiment CSVs diff-able.

pub mod config;
pub mod fmt;
