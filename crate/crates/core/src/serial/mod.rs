//! External formats: a PNML subset for nets, a textual grammar for trees,
//! CSV for benchmark rows, and a human-diffable step-log format.

mod bench_csv;
mod pnml;
mod step_log;
mod tree_text;

pub use bench_csv::{write_bench_csv, BenchOutcome, BenchRow};
pub use pnml::{read_pnml, write_pnml, PnmlError};
pub use step_log::write_step_log;
pub use tree_text::{read_tree_text, write_tree_text, TreeTextError};
