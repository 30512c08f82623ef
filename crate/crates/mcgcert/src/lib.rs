//! File formats, reports, parallel execution and the command line for
//! `mcgcert`.

pub mod cache;
pub mod cert_file;
pub mod chart_file;
pub mod cli;
pub mod report;
pub mod runner;
