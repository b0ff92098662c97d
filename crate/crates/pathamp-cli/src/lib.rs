//! Command-line surface over the path-amplitude library: scenario documents
//! in, angular profiles / parameter scans / scalar reports out, plus the
//! oracle verification suite.
//!
//! The binary is a thin wrapper; everything testable lives here.

pub mod error;
pub mod output;
pub mod run;
pub mod scenario;
