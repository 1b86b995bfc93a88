//! Library surface of the `ekc` driver: command implementations, the
//! experiment configuration, and the deterministic output writers. The
//! binary in `main.rs` is a thin argument-parsing shell over this.

pub mod commands;
pub mod config;
pub mod output;
