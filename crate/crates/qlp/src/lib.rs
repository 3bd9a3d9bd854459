//! Command-line front end for `qlp-core`: job dispatch, JSON reports,
//! CSV sweeps and the verification suites.

pub mod exact;
pub mod job;
pub mod parse;
pub mod report;
pub mod table;
pub mod verify;
