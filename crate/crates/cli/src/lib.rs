//! Command-line front end for `conj-core`: structure descriptions, the
//! checking commands, the arc demo and the gallery.

pub mod arcs;
pub mod cli;
pub mod commands;
pub mod format;
pub mod gallery;
pub mod report;
