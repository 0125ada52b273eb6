//! Treebank ingestion, reports and the `deptree` command-line tool.

pub mod cli;
pub mod conllu;
pub mod edgelist;
pub mod format;
pub mod report;

use std::path::PathBuf;

/// Directory holding the test fixtures: `$DEPTREE_FIXTURES`, or
/// `tests/fixtures` inside this crate.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("DEPTREE_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                .join("tests")
                .join("fixtures")
        })
}
