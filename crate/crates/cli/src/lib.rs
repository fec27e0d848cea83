//! Command-line front end: built-in catalog, build files, `.alg.json`
//! persistence and reports.

pub mod app;
pub mod build_file;
pub mod report;
pub mod store;

pub use app::{run, EXIT_ERROR, EXIT_FAIL, EXIT_OK};
