//! Campaign runner and the append-only report store.

mod campaign;
mod runner;
mod store;

use std::path::PathBuf;

use thiserror::Error;

use crate::digraph::GraphError;

pub use campaign::{Campaign, CampaignKind, HostClass, Strategy};
pub use runner::{
    run_campaign, run_campaign_with, Counterexample, Failure, RunOptions, ScanReport,
    MAX_ATTEMPTS_PER_SAMPLE, REPORT_VERSION,
};
pub use store::{Appended, CorruptLine, Query, QueryResult, Store};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("campaign: {0}")]
    Campaign(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
