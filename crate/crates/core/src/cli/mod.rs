//! Command-line front end: `learn`, `experiment`, `oracle` and `bounds`.

mod bounds;
mod experiment;
mod learn;
mod oracle;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::learner::{LearnerConfig, Symmetrization};

pub use bounds::{cmd_bounds, BoundsArgs};
pub use experiment::{
    cmd_experiment, run_experiment, CellResult, ExperimentArgs, ExperimentResult, ExperimentSpec,
    Sampler, RESULTS_HEADER,
};
pub use learn::{cmd_learn, LearnArgs};
pub use oracle::{cmd_oracle, OracleArgs};

const MODEL_HELP: &str = "Model family: grid:K | chain:P | cycle:P | tree:D:DEPTH | star:LEAVES | \
counterexample:D | er:P:PROB:SEED | random-tree:P:SEED";
const THETA_HELP: &str = "Edge weights: const:THETA | uniform:LO:HI:SEED | signed:THETA:SEED";

#[derive(Debug, Parser)]
#[command(
    name = "greedy-mrf",
    version,
    about = "Greedy conditional-entropy structure learning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn a graph from a CSV dataset.
    Learn(LearnArgs),
    /// Success rate of exact recovery over sample sizes on a synthetic model.
    Experiment(ExperimentArgs),
    /// Run the learner on a model's exact distribution and write the full trace.
    Oracle(OracleArgs),
    /// Evaluate the closed-form sample, girth and gap bounds.
    Bounds(BoundsArgs),
}

/// Learner flags shared by `learn`, `experiment` and `oracle`.
#[derive(Debug, Clone, Args)]
pub struct LearnerFlags {
    /// Symmetrization of per-vertex neighbourhoods: and | or.
    #[arg(long, default_value = "and", value_parser = parse_sym)]
    pub symmetrization: Symmetrization,
    /// Drop picks whose removal costs at most epsilon/2 before assembling the graph.
    #[arg(long)]
    pub prune: bool,
    /// Cap on neighbourhood size.
    #[arg(long, conflicts_with = "degree_hint")]
    pub max_neighborhood: Option<usize>,
    /// Expected maximum degree; caps neighbourhoods at twice this.
    #[arg(long)]
    pub degree_hint: Option<usize>,
}

impl LearnerFlags {
    pub fn config(&self, epsilon: f64) -> Result<LearnerConfig> {
        let mut cfg = LearnerConfig::new(epsilon)
            .with_symmetrization(self.symmetrization)
            .with_prune(self.prune)
            .with_cap(self.max_neighborhood);
        if let Some(d) = self.degree_hint {
            cfg = cfg.with_degree_hint(d);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_sym(s: &str) -> std::result::Result<Symmetrization, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Learn(a) => cmd_learn(&a),
        Command::Experiment(a) => cmd_experiment(&a).map(|_| ()),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Bounds(a) => {
            print!("{}", cmd_bounds(&a)?);
            Ok(())
        }
    }
}

pub(crate) fn out_dir(dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    Ok(dir.to_path_buf())
}

pub(crate) fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(path, e))
}
