//! Scenario files, result documents and subcommands behind the `exitrate`
//! binary.

pub mod commands;
pub mod error;
pub mod report;
pub mod scenario;
