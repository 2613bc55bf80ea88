//! Artifact plumbing around the library: TOML run configuration, CSV and
//! SVG emission, and the command-line front end.
//!
//! The split mirrors the artifact kinds. [`config`] turns a TOML file into
//! validated model/montecarlo inputs, [`csv`] renders results as the
//! canonical diff-able tables, [`svg`] draws presentation line charts, and
//! [`cli`] wires the three together behind subcommands.

pub mod cli;
pub mod config;
pub mod csv;
pub mod svg;
