//! Command-line front end: input handling, JSON reports, report
//! re-verification, and a parallel driver for the flat-graph search.

pub mod cli;
pub mod parallel;
pub mod report;
pub mod verify;

pub use cli::run;
