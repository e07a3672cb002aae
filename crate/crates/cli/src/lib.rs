//! Library side of the `hoinfo` command-line tool: input formats, run
//! reports and batch processing.

pub mod batch;
pub mod input;
pub mod report;
