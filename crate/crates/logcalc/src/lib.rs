//! Text and JSON front end for `logcalc-core`.

pub mod cli;
pub mod files;
pub mod fuzz;
pub mod parse;
