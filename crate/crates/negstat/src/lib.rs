//! Std companion to `negstat-core`: report formats and the `negstat` command line.

pub mod cli;
pub mod report;
