//! File formats, seeded verification suites and the command implementations
//! for the `evenartin` binary.

pub mod commands;
pub mod io;
pub mod suites;

pub use commands::{Outcome, Verdict};
pub use io::FormatError;
