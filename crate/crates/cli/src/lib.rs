//! Command-line front end for the qcarlitz library: single values, grid
//! verification suites with machine-readable reports, and value tables.

pub mod report;
pub mod suites;
pub mod table;
