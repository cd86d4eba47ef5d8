use std::path::PathBuf;

use clap::Args;

use super::{out_dir, write_file, LearnerFlags};
use crate::dataset::{load_csv, IngestOptions};
use crate::entropy::DistributionSource;
use crate::error::Result;
use crate::learner::learn_structure;

#[derive(Debug, Clone, Args)]
pub struct LearnArgs {
    /// CSV file: header of variable names, one sample per row.
    pub input: PathBuf,
    /// Greedy threshold; a pick must lower the conditional entropy by more than epsilon/2 bits.
    #[arg(long)]
    pub epsilon: f64,
    /// Output directory for result.json, graph.dot and graph.edges.
    #[arg(long, short, default_value = "out")]
    pub out: PathBuf,
    /// Token rewrite FROM=TO, applied before alphabet inference (repeatable; first match wins).
    #[arg(long = "map", value_name = "FROM=TO")]
    pub map: Vec<String>,
    /// File of FROM=TO rules, one per line, appended after --map rules.
    #[arg(long)]
    pub map_file: Option<PathBuf>,
    /// Comma-separated alphabet in index order; inferred (sorted) when absent.
    #[arg(long, value_delimiter = ',')]
    pub alphabet: Option<Vec<String>>,
    /// Keep only columns with at least this fraction of non-missing entries.
    #[arg(long)]
    pub participation: Option<f64>,
    /// Raw token marking a missing entry for --participation.
    #[arg(long, default_value = "Absent")]
    pub missing: String,
    #[command(flatten)]
    pub learner: LearnerFlags,
}

impl LearnArgs {
    pub fn ingest_options(&self) -> Result<IngestOptions> {
        let mut opts = IngestOptions {
            map: self
                .map
                .iter()
                .map(|r| IngestOptions::parse_rule(r))
                .collect::<Result<_>>()?,
            alphabet: self.alphabet.clone(),
            missing: Some(self.missing.clone()),
            participation: self.participation,
        };
        if let Some(f) = &self.map_file {
            opts.add_map_file(f)?;
        }
        Ok(opts)
    }
}

/// Learns from a CSV and writes `result.json`, `graph.dot` and `graph.edges`.
pub fn cmd_learn(args: &LearnArgs) -> Result<()> {
    let cfg = args.learner.config(args.epsilon)?;
    let data = load_csv(&args.input, &args.ingest_options()?)?;
    let result = learn_structure(&DistributionSource::Empirical(&data), &cfg)?;
    let dir = out_dir(&args.out)?;
    let mut doc = serde_json::to_value(&result)?;
    doc["variables"] = serde_json::to_value(data.names())?;
    doc["samples"] = data.n().into();
    write_file(
        &dir,
        "result.json",
        &(serde_json::to_string_pretty(&doc)? + "\n"),
    )?;
    write_file(&dir, "graph.dot", &result.graph.to_dot(Some(data.names())))?;
    write_file(&dir, "graph.edges", &result.graph.to_edge_list())?;
    write_file(&dir, "trace.txt", &result.trace_text(Some(data.names())))?;
    Ok(())
}
