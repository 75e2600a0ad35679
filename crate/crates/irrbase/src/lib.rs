//! File formats, reports and the command implementations behind the
//! `irrbase` binary.

pub mod error;
pub mod report;
pub mod spec;
pub mod verify;

pub use error::CliError;
pub use report::{
    parse_corpus, run_corpus, run_stats, write_csv, CorpusSummary, Report, RunOptions, CSV_HEADER, DEFAULT_CORPUS,
    SCHEMA,
};
pub use spec::{parse_generators, BuiltGroup, Family, GroupSpec};
pub use verify::{run_verify, VerifyGrid, VerifyReport};
