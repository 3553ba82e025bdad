//! Structure-file parsing, suites, and reports behind the `cofrob` binary.

pub mod document;
pub mod report;
