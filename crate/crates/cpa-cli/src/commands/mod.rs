//! Subcommand implementations.

pub mod approximate;
pub mod formants;
pub mod render;
pub mod score;
pub mod winrate;
