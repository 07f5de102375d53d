//! Instance files, benchmark harness, LP export and the `mci` command line.

pub mod bench;
pub mod cli;
pub mod export;
pub mod format;

pub use bench::{run_benchmark, summarize, BenchRecord, SummaryRow};
pub use format::{parse_instance, write_instance, FormatError};
