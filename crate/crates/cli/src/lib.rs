//! Library surface of the command-line tool: input schemas, report
//! encoding, and the exact identity suites. The binary in `main.rs` is a
//! thin dispatcher over these.

pub mod identities;
pub mod report;
pub mod schema;
