//! Command line front end: configuration, file formats, audio IO, and the
//! subcommand implementations behind the `cpa` binary.

pub mod commands;
pub mod config;
pub mod formats;
pub mod wav;
