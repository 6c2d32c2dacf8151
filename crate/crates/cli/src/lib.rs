//! File formats, configuration, simulation campaigns and the command-line
//! front end for `subcodec-core`.

pub mod app;
pub mod campaign;
pub mod config;
pub mod formats;
pub mod selfcheck;

pub use app::run;
