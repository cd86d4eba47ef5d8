use std::fmt::Write as _;

use clap::Args;
use serde_json::json;

use crate::error::{Error, Result};
use crate::theory::{bound_reports, BoundParams, LogBase};

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    /// Maximum degree D.
    #[arg(long)]
    pub degree: usize,
    /// Non-degeneracy gap epsilon (bits); enables the h and sample-count reports.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Lower bound beta on |theta|; enables the Ising epsilon and girth reports.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Upper bound gamma on |theta|; with --beta enables the decay-regime epsilon.
    #[arg(long, requires = "beta")]
    pub gamma: Option<f64>,
    /// Alphabet size |X|.
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
    /// Number of variables (for the sample count).
    #[arg(long, requires = "delta")]
    pub p: Option<usize>,
    /// Failure probability (for the sample count).
    #[arg(long, requires = "p")]
    pub delta: Option<f64>,
    /// Logarithm base inside the sample count: 2 or e.
    #[arg(long, default_value = "2", value_parser = parse_base)]
    pub log_base: LogBase,
    /// Print JSON instead of aligned text.
    #[arg(long)]
    pub json: bool,
}

fn parse_base(s: &str) -> std::result::Result<LogBase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Renders every bound whose inputs were supplied.
pub fn cmd_bounds(args: &BoundsArgs) -> Result<String> {
    if args.epsilon.is_none() && args.beta.is_none() {
        return Err(Error::argument(
            "nothing to report: pass --epsilon and/or --beta",
        ));
    }
    let reports = bound_reports(&BoundParams {
        epsilon: args.epsilon,
        beta: args.beta,
        gamma: args.gamma,
        degree: args.degree,
        alphabet: args.alphabet,
        p: args.p,
        delta: args.delta,
        log_base: args.log_base,
    })?;
    if args.json {
        let doc = json!({
            "inputs": {
                "degree": args.degree,
                "epsilon": args.epsilon,
                "beta": args.beta,
                "gamma": args.gamma,
                "alphabet": args.alphabet,
                "p": args.p,
                "delta": args.delta,
                "log_base": args.log_base.to_string(),
            },
            "reports": reports,
        });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:<24e}  {}",
            r.name, r.value, r.formula_ref
        );
    }
    Ok(out)
}
