//! Command-line front end for the `kch-core` engines: chain specs in,
//! resistance tables, extremal reports, certificates and graph exports out.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;
